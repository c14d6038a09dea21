#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcp/ez.hpp"

namespace tcp {

/// Twisting operator tau: B_n -> G_{n-1}, n >= 1.  The rule covers
/// nondegenerate simplices; the extension to degenerate ones is forced by
/// the axioms (s_i tau = tau s_{i+1} and tau s_0 = unit).
struct TwistingOperator {
  SpacePtr base;
  GroupPtr group;
  std::function<Simplex(const Gen&, int)> rule;

  Simplex apply(const Simplex& b) const {
    if (b.dim() < 1)
      throw Error("twisting operator needs dimension >= 1");
    if (!b.degenerate()) return rule(b.core, b.dim());
    int j = b.degs.front();
    Simplex rest(std::vector<int>(b.degs.begin() + 1, b.degs.end()), b.core,
                 b.core_dim);
    if (j == 0) return group->unit(b.dim() - 1);
    return apply_degeneracy(j - 1, apply(rest));
  }
};

/// All canonical simplices of X in the given dimension (degenerate ones
/// included); nullopt when some required core dimension is OPEN.
inline std::optional<std::vector<Simplex>> all_simplices(const SpacePtr& X,
                                                         int dim) {
  std::vector<Simplex> out;
  for (int p = 0; p <= dim; ++p) {
    const auto& cores = X->nondegenerate(p);
    if (!cores) return std::nullopt;
    std::vector<bool> nothing(static_cast<std::size_t>(dim), false);
    for (const auto& degset : detail::subsets(dim, dim - p, nothing))
      for (const Gen& g : *cores)
        out.emplace_back(std::vector<int>(degset.rbegin(), degset.rend()), g,
                         p);
  }
  return out;
}

/// The four twisting-operator axioms on the given base simplices.
inline CheckReport check_twisting(const TwistingOperator& tau,
                                  const std::vector<Simplex>& samples) {
  CheckReport rep;
  const SpacePtr& B = tau.base;
  const GroupPtr& G = tau.group;
  SpacePtr GS = G->space;
  auto expect = [&rep](bool okay, const char* axiom, const Simplex& b,
                       const std::string& detail) {
    ++rep.checked;
    if (!okay)
      rep.failures.push_back(CheckFailure{axiom, to_string(b), detail});
  };
  for (const Simplex& b : samples) {
    const int n = b.dim();
    if (n < 1) continue;
    Simplex tb = tau.apply(b);
    if (tb.dim() != n - 1) {
      rep.failures.push_back(
          CheckFailure{"degree", to_string(b), "tau(b) has wrong dimension"});
      continue;
    }
    if (n >= 2) {
      Simplex lhs = GS->face(0, tb);
      Simplex rhs = G->mul(n - 2, tau.apply(B->face(1, b)),
                           G->inv(n - 2, tau.apply(B->face(0, b))));
      expect(lhs == rhs, "d0 tau = tau(d1) tau(d0)^-1", b,
             to_string(lhs) + " vs " + to_string(rhs));
      for (int i = 1; i <= n - 1; ++i)
        expect(GS->face(i, tb) == tau.apply(B->face(i + 1, b)),
               "d_i tau = tau d_{i+1}", b, "i=" + std::to_string(i));
    }
    for (int i = 0; i <= n - 1; ++i)
      expect(apply_degeneracy(i, tb) ==
                 tau.apply(apply_degeneracy(i + 1, b)),
             "s_i tau = tau s_{i+1}", b, "i=" + std::to_string(i));
    expect(tau.apply(apply_degeneracy(0, b)) == G->unit(n),
           "tau s_0 = unit", b, "");
  }
  return rep;
}

/// Twisted cartesian product E = F x_tau B: the cells of F x B with d_0
/// deformed through the action, d_0(y,b) = (d_0 y . tau(b), d_0 b).
struct Tcp {
  std::string name;
  SpacePtr fiber;
  GroupPtr group;
  GroupAction action;
  SpacePtr base;
  TwistingOperator tau;
  SpacePtr untwisted;  // F x B
  SpacePtr total;      // F x_tau B, same cells
  ComplexPtr c_fiber, c_base, c_untwisted, c_total;
};

inline Tcp make_tcp(std::string name, SpacePtr F, GroupPtr G, GroupAction act,
                    SpacePtr B, TwistingOperator tau) {
  Tcp t;
  t.name = std::move(name);
  t.fiber = F;
  t.group = G;
  t.action = act;
  t.base = B;
  t.tau = std::move(tau);
  t.untwisted = product(F, B, t.name + " (untwisted)");
  SpacePtr untw = t.untwisted;
  auto face = [F, B, act, tau = t.tau](int dim, int i,
                                       const Gen& core) -> Simplex {
    const PairNode& p = pair_of(core);
    if (i == 0) {
      Simplex d0y = F->face(0, p.x);
      Simplex d0b = B->face(0, p.y);
      Simplex moved = act.act(dim - 1, d0y, tau.apply(p.y));
      return make_product_simplex(moved, d0b);
    }
    return make_product_simplex(F->face(i, p.x), B->face(i, p.y));
  };
  auto basis = [untw](int n) { return untw->nondegenerate(n); };
  t.total = std::make_shared<SimplicialSet>(t.name, face, basis);
  t.c_fiber = normalized_chains(F);
  t.c_base = normalized_chains(B);
  t.c_untwisted = normalized_chains(t.untwisted);
  t.c_total = normalized_chains(t.total, "C(" + t.name + ")");
  return t;
}

/// delta_tau = (d_0 y . tau(b), d_0 b) - (d_0 y, d_0 b) on positive-degree
/// generators of C(F x B); zero in degree 0.
inline GradedMap twisted_perturbation(const Tcp& t) {
  SpacePtr F = t.fiber;
  SpacePtr B = t.base;
  GroupAction act = t.action;
  TwistingOperator tau = t.tau;
  return GradedMap(-1, [F, B, act, tau](const Gen& g, int n) -> FormalSum {
    if (n == 0) return FormalSum();
    const PairNode& p = pair_of(g);
    Simplex d0y = F->face(0, p.x);
    Simplex d0b = B->face(0, p.y);
    Simplex moved = act.act(n - 1, d0y, tau.apply(p.y));
    return chain_of(make_product_simplex(moved, d0b)) -
           chain_of(make_product_simplex(d0y, d0b));
  });
}

/// Twisted Eilenberg-Zilber: BPL applied to the EZ reduction with the
/// perturbation delta_tau, landing on C(F) (x) C(B) with the twisted
/// differential d_t.
struct TwistedEz {
  EzData ez;
  GradedMap delta_tau;  // on C(F x B)
  GradedMap delta_t;    // d_t - d_tensor on the bottom
  ComplexPtr top;       // C(E)
  ComplexPtr bottom;    // tensor complex with d_t
  Reduction reduction;  // top => bottom
};

inline TwistedEz twisted_ez(const Tcp& t, int guard = kDefaultGuard,
                            StatsPtr stats = nullptr) {
  EzData ez = ez_reduction(t.fiber, t.base, guard, stats, t.untwisted,
                           t.c_untwisted, nullptr, t.c_fiber, t.c_base);
  GradedMap dtau = twisted_perturbation(t);
  BplOutput out =
      basic_perturbation_lemma(ez.reduction, dtau, guard, stats, t.c_total);
  return TwistedEz{std::move(ez), std::move(dtau),
                   out.delta_bottom,        out.reduction.top,
                   out.reduction.bottom,    std::move(out.reduction)};
}

/// Shih's twisting cochain t: C_n(B) -> C_{n-1}(G), read off the twisted
/// differential of the principal product G x_tau B:
///   t_n(b) = p . lambda_0 . (d_{t,G} - d_tensor)(e_0 (x) b),
/// where lambda_0 projects onto C_{n-1}(G) (x) C_0(B) and p applies the
/// augmentation of the base factor.  Vanishes on degenerate simplices and in
/// degree 0.
class TwistingCochain {
 public:
  TwistingCochain(const Tcp& principal, int guard = kDefaultGuard,
                  StatsPtr stats = nullptr)
      : group_(principal.group), base_(principal.base) {
    TwistedEz tez = twisted_ez(principal, guard, stats);
    GradedMap delta_t = tez.delta_t;
    Gen e0 = principal.group->unit(0).core;
    map_ = GradedMap(-1, [delta_t, e0](const Gen& b, int n) -> FormalSum {
      FormalSum out;
      if (n < 1) return out;
      FormalSum twisted = delta_t.apply_gen(Gen::tensor(e0, 0, b, n), n);
      for (const auto& [g, c] : twisted.terms()) {
        const TensorNode& w = tensor_of(g);
        if (w.ydeg != 0) continue;  // lambda_0
        out += FormalSum(w.x, c);   // p(x (x) b0) = eps(b0) x, eps = 1
      }
      return out;
    });
  }

  const GroupPtr& group() const { return group_; }
  const SpacePtr& base() const { return base_; }

  FormalSum operator()(const Simplex& b) const {
    if (b.degenerate() || b.dim() == 0) return FormalSum();
    return map_.apply_gen(b.core, b.dim());
  }

  /// Linear extension to a homogeneous base chain of degree n.
  FormalSum apply_chain(const FormalSum& c, int n) const {
    return map_(c, n);
  }

 private:
  GroupPtr group_;
  SpacePtr base_;
  GradedMap map_;
};

inline Tcp principal_tcp(const Tcp& t) {
  return make_tcp(t.name + " (principal)", t.group->space, t.group,
                  principal_action(t.group), t.base, t.tau);
}

/// sigma = C(action) o EML : C(F) (x) C(G) -> C(F).
inline GradedMap sigma_action_map(const GroupAction& act) {
  GradedMap shuffle = eml_shuffle_map();
  return GradedMap(0, [shuffle, act](const Gen& g, int n) {
    FormalSum cells = shuffle.apply_gen(g, n);
    FormalSum out;
    for (const auto& [cell, c] : cells.terms()) {
      const PairNode& p = pair_of(cell);
      out += c * chain_of(act.act(n, p.x, p.y));
    }
    return out;
  });
}

enum class CapMode { Formula1, Composite };

/// The cap product t-cap on C(F) (x) C(B): either the explicit face sum
///   sum_{i=1}^{n} (-1)^k sigma(y (x) t(front_{i} b)) (x) d_0^i b
/// or the operator composite (sigma (x) 1)(1 (x) t (x) 1)(1 (x) AW Delta).
inline GradedMap cap_product_map(const Tcp& t, const TwistingCochain& tc,
                                 CapMode mode) {
  SpacePtr B = t.base;
  GradedMap sigma = sigma_action_map(t.action);
  if (mode == CapMode::Formula1) {
    return GradedMap(-1, [B, sigma, tc](const Gen& g, int) -> FormalSum {
      const TensorNode& w = tensor_of(g);
      const int k = w.xdeg, n = w.ydeg;
      FormalSum out;
      Simplex b({}, w.y, n);
      for (int i = 1; i <= n; ++i) {
        FormalSum tb = tc(B->tilde_d(b, n - i));  // degree i - 1 in C(G)
        if (tb.is_zero()) continue;
        FormalSum yt = tensor_chains(FormalSum(w.x), k, tb, i - 1);
        FormalSum s = sigma(yt, k + i - 1);
        Simplex d0i = b;
        for (int r = 0; r < i; ++r) d0i = B->face(0, d0i);
        FormalSum term = tensor_chains(s, k + i - 1, chain_of(d0i), n - i);
        out += (k % 2 == 0) ? term : -term;
      }
      return out;
    });
  }
  GradedMap aw = alexander_whitney_map(B, B);
  GradedMap diag = diagonal_chain(B);
  return GradedMap(-1, [sigma, tc, aw, diag](const Gen& g, int) -> FormalSum {
    const TensorNode& w = tensor_of(g);
    const int k = w.xdeg, n = w.ydeg;
    FormalSum D = aw(diag.apply_gen(w.y, n), n);  // in C(B) (x) C(B)
    FormalSum out;
    for (const auto& [xy, c] : D.terms()) {
      const TensorNode& d = tensor_of(xy);
      FormalSum tb = tc(Simplex({}, d.x, d.xdeg));
      if (tb.is_zero()) continue;
      FormalSum s =
          sigma(tensor_chains(FormalSum(w.x), k, tb, d.xdeg - 1), k + d.xdeg - 1);
      FormalSum term = c * tensor_chains(s, k + d.xdeg - 1,
                                         FormalSum(d.y), d.ydeg);
      out += (k % 2 == 0) ? term : -term;
    }
    return out;
  });
}

/// Filtration degree: the dimension of the nondegenerate core of the base
/// factor, maximized over terms; nullopt encodes -infinity for the zero sum.
inline std::optional<int> filtration_degree(const FormalSum& c) {
  std::optional<int> out;
  for (const auto& [g, coeff] : c.terms()) {
    int f;
    if (const auto* w = std::get_if<TensorNode>(&g.data().node))
      f = w->ydeg;  // tensor base factors are nondegenerate generators
    else if (const auto* p = std::get_if<PairNode>(&g.data().node))
      f = p->y.core_dim;
    else
      throw Error("filtration degree: unsupported generator " + to_string(g));
    if (!out || f > *out) out = f;
  }
  return out;
}

/// Asserts filt(map(c)) <= filt(c) - min_drop on each sampled tensor
/// generator (vacuous on elements mapped to zero).
inline CheckReport filtration_drop_report(
    const GradedMap& cap, const std::vector<std::pair<int, Gen>>& samples,
    int min_drop) {
  CheckReport rep;
  for (const auto& [n, g] : samples) {
    FormalSum v = cap.apply_gen(g, n);
    ++rep.checked;
    auto fin = filtration_degree(FormalSum(g));
    auto fout = filtration_degree(v);
    if (fout && *fout > *fin - min_drop)
      rep.failures.push_back(CheckFailure{
          "filtration drop >= " + std::to_string(min_drop), to_string(g),
          "filt " + std::to_string(*fin) + " -> " + std::to_string(*fout)});
  }
  return rep;
}

}  // namespace tcp

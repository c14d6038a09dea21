#pragma once

#include <string>
#include <vector>

#include "tcp/morse.hpp"

namespace tcp {

namespace ezdetail {

// A nondegenerate cell (s_A x', s_B y') of X x Y is encoded by the word over
// {F, B, D} recording at each position whether the fiber factor, the base
// factor, or neither is degenerate there.  Critical words are B^p F^q; they
// correspond to the tensor generators x' (x) y'.
struct Word {
  std::vector<char> w;
  Gen xcore, ycore;
  int xdim = 0, ydim = 0;
};

inline Word decode(const Gen& cell, int n) {
  const PairNode& p = pair_of(cell);
  Word out;
  out.w.assign(static_cast<std::size_t>(n), 'D');
  for (int j : p.x.degs) out.w[static_cast<std::size_t>(j)] = 'F';
  for (int j : p.y.degs) out.w[static_cast<std::size_t>(j)] = 'B';
  out.xcore = p.x.core;
  out.xdim = p.x.core_dim;
  out.ycore = p.y.core;
  out.ydim = p.y.core_dim;
  return out;
}

inline Gen encode(const Word& wd) {
  std::vector<int> fdegs, bdegs;
  for (int i = static_cast<int>(wd.w.size()) - 1; i >= 0; --i) {
    if (wd.w[static_cast<std::size_t>(i)] == 'F') fdegs.push_back(i);
    if (wd.w[static_cast<std::size_t>(i)] == 'B') bdegs.push_back(i);
  }
  return Gen::cell_pair(Simplex(std::move(fdegs), wd.xcore, wd.xdim),
                        Simplex(std::move(bdegs), wd.ycore, wd.ydim));
}

enum class Defect { None, SourceD, TargetCorner };

// First position where the word leaves the critical shape B^p F^q: either a
// diagonal letter or an F immediately followed by a B.
inline std::pair<Defect, int> scan(const std::vector<char>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 'D') return {Defect::SourceD, static_cast<int>(i)};
    if (w[i] == 'F' && i + 1 < w.size() && w[i + 1] == 'B')
      return {Defect::TargetCorner, static_cast<int>(i)};
  }
  return {Defect::None, -1};
}

inline Word pair_up(const Word& wd, int pos) {  // D_pos -> F_pos B_{pos+1}
  Word out = wd;
  out.w[static_cast<std::size_t>(pos)] = 'F';
  out.w.insert(out.w.begin() + pos + 1, 'B');
  return out;
}

inline Word pair_down(const Word& wd, int pos) {  // F_pos B_{pos+1} -> D_pos
  Word out = wd;
  out.w[static_cast<std::size_t>(pos)] = 'D';
  out.w.erase(out.w.begin() + pos + 1);
  return out;
}

}  // namespace ezdetail

/// The product vector field whose critical cells are the tensor generators;
/// pairing replaces the first diagonal step by the fiber-then-base corner.
inline VectorField ez_vector_field(SpacePtr prod) {
  auto pair = [](const Simplex& s) -> std::optional<Simplex> {
    ezdetail::Word wd = ezdetail::decode(s.core, s.dim());
    auto [defect, pos] = ezdetail::scan(wd.w);
    if (defect != ezdetail::Defect::SourceD) return std::nullopt;
    return Simplex({}, ezdetail::encode(ezdetail::pair_up(wd, pos)),
                   s.dim() + 1);
  };
  auto classify = [](const Simplex& s) {
    ezdetail::Word wd = ezdetail::decode(s.core, s.dim());
    switch (ezdetail::scan(wd.w).first) {
      case ezdetail::Defect::SourceD: return CellClass::Source;
      case ezdetail::Defect::TargetCorner: return CellClass::Target;
      default: return CellClass::Critical;
    }
  };
  auto critical = [prod](int n) -> std::optional<std::vector<Gen>> {
    auto cells = prod->nondegenerate(n);
    if (!cells) return std::nullopt;
    std::vector<Gen> out;
    for (const Gen& g : *cells) {
      ezdetail::Word wd = ezdetail::decode(g, n);
      if (ezdetail::scan(wd.w).first == ezdetail::Defect::None)
        out.push_back(g);
    }
    return out;
  };
  return VectorField{prod, pair, classify, critical};
}

/// AW(x, y) = sum_i (front i-face of x) (x) (d_0^i y), normalized.
inline GradedMap alexander_whitney_map(SpacePtr X, SpacePtr Y) {
  return GradedMap(0, [X, Y](const Gen& cell, int n) {
    const PairNode& p = pair_of(cell);
    FormalSum out;
    // fronts[i] = tilde_d^{n-i} x (dimension i); backs[i] = d_0^i y
    std::vector<Simplex> fronts(static_cast<std::size_t>(n) + 1, p.x);
    std::vector<Simplex> backs(static_cast<std::size_t>(n) + 1, p.y);
    for (int k = n - 1; k >= 0; --k)
      fronts[static_cast<std::size_t>(k)] = X->face(
          k + 1, fronts[static_cast<std::size_t>(k) + 1]);
    for (int k = 1; k <= n; ++k)
      backs[static_cast<std::size_t>(k)] =
          Y->face(0, backs[static_cast<std::size_t>(k) - 1]);
    for (int i = 0; i <= n; ++i) {
      const Simplex& fr = fronts[static_cast<std::size_t>(i)];
      const Simplex& bk = backs[static_cast<std::size_t>(i)];
      if (fr.degenerate() || bk.degenerate()) continue;
      out += FormalSum(Gen::tensor(fr.core, i, bk.core, n - i));
    }
    return out;
  });
}

/// EML(x (x) y) = signed sum over (p,q)-shuffles of (s_B x, s_A y) where A
/// gets p indices for the second factor; the sign counts inversions between
/// the two blocks.
inline GradedMap eml_shuffle_map() {
  return GradedMap(0, [](const Gen& g, int) {
    const TensorNode& t = tensor_of(g);
    const int p = t.xdeg, q = t.ydeg, n = p + q;
    FormalSum out;
    std::vector<bool> nothing(static_cast<std::size_t>(n), false);
    for (const auto& mu : detail::subsets(n, p, nothing)) {
      std::vector<int> nu;
      std::vector<bool> in_mu(static_cast<std::size_t>(n), false);
      for (int m : mu) in_mu[static_cast<std::size_t>(m)] = true;
      for (int v = 0; v < n; ++v)
        if (!in_mu[static_cast<std::size_t>(v)]) nu.push_back(v);
      long long inversions = 0;
      for (int m : mu)
        for (int v : nu)
          if (m > v) ++inversions;
      Simplex sx(std::vector<int>(nu.rbegin(), nu.rend()), t.x, p);
      Simplex sy(std::vector<int>(mu.rbegin(), mu.rend()), t.y, q);
      out += FormalSum(Gen::cell_pair(std::move(sx), std::move(sy)),
                       inversions % 2 == 0 ? 1 : -1);
    }
    return out;
  });
}

/// The Eilenberg-Zilber reduction C(X x Y) => C(X) (x) C(Y).  The official
/// triple uses the explicit AW and shuffle maps; the homotopy comes from the
/// product vector field through the BPL.  The raw BPL triple and its bottom
/// differential are kept for cross-checks (both must coincide with the
/// explicit maps and the Koszul differential).
struct EzData {
  SpacePtr X, Y, prod;
  ComplexPtr top;     // C(X x Y)
  ComplexPtr bottom;  // C(X) (x) C(Y)
  Reduction reduction;
  Reduction bpl_reduction;
  GradedMap bpl_delta_bottom;
  VectorField field;
};

inline EzData ez_reduction(SpacePtr X, SpacePtr Y, int guard = kDefaultGuard,
                           StatsPtr stats = nullptr, SpacePtr prod_space = nullptr,
                           ComplexPtr top = nullptr, ComplexPtr bottom = nullptr,
                           ComplexPtr cX = nullptr, ComplexPtr cY = nullptr) {
  SpacePtr P = prod_space ? prod_space : product(X, Y);
  if (!cX) cX = normalized_chains(X);
  if (!cY) cY = normalized_chains(Y);
  if (!top) top = normalized_chains(P);
  if (!bottom) bottom = tensor_complex(cX, cY);

  GradedMap d_v(-1, [](const Gen& g, int n) -> FormalSum {
    ezdetail::Word wd = ezdetail::decode(g, n);
    auto [defect, pos] = ezdetail::scan(wd.w);
    if (defect != ezdetail::Defect::TargetCorner) return FormalSum();
    Gen src = ezdetail::encode(ezdetail::pair_down(wd, pos));
    return FormalSum(src, (pos + 1) % 2 == 0 ? 1 : -1);  // sigma = d_{pos+1} tau
  });
  GradedMap h0(1, [](const Gen& g, int n) -> FormalSum {
    ezdetail::Word wd = ezdetail::decode(g, n);
    auto [defect, pos] = ezdetail::scan(wd.w);
    if (defect != ezdetail::Defect::SourceD) return FormalSum();
    Gen tau = ezdetail::encode(ezdetail::pair_up(wd, pos));
    return FormalSum(tau, pos % 2 == 0 ? 1 : -1);
  });
  GradedMap f0(0, [](const Gen& g, int n) -> FormalSum {
    ezdetail::Word wd = ezdetail::decode(g, n);
    if (ezdetail::scan(wd.w).first != ezdetail::Defect::None)
      return FormalSum();
    return FormalSum(Gen::tensor(wd.xcore, wd.xdim, wd.ycore, wd.ydim));
  });
  GradedMap g0(0, [](const Gen& g, int) -> FormalSum {
    const TensorNode& t = tensor_of(g);
    std::vector<int> fdegs, bdegs;
    for (int j = t.xdeg + t.ydeg - 1; j >= t.xdeg; --j) fdegs.push_back(j);
    for (int j = t.xdeg - 1; j >= 0; --j) bdegs.push_back(j);
    return FormalSum(Gen::cell_pair(Simplex(std::move(fdegs), t.x, t.xdeg),
                                    Simplex(std::move(bdegs), t.y, t.ydeg)));
  });

  ComplexPtr top_v = make_complex(
      "(" + top->name() + ", d_V)", [top](int n) { return top->try_basis(n); },
      d_v);
  ComplexPtr bottom0 = make_complex(
      bottom->name() + "0", [bottom](int n) { return bottom->try_basis(n); },
      GradedMap::zero(-1));
  Reduction base{top_v, bottom0, f0, g0, h0};
  GradedMap rest = sub(top->diff(), d_v);
  BplOutput out =
      basic_perturbation_lemma(base, rest, guard, stats, top, bottom);

  Reduction official{top, bottom, alexander_whitney_map(X, Y),
                     eml_shuffle_map(), out.reduction.h};
  return EzData{X,
                Y,
                P,
                top,
                bottom,
                std::move(official),
                std::move(out.reduction),
                std::move(out.delta_bottom),
                ez_vector_field(P)};
}

}  // namespace tcp

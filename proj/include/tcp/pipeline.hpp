#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcp/builtins.hpp"
#include "tcp/homology.hpp"
#include "tcp/morse.hpp"
#include "tcp/sampling.hpp"
#include "tcp/zigzag.hpp"

namespace tcp {

/// One side of the effective equipment: a strong equivalence
/// C_*(X) <=> EC_*(X) whose right end is finitely generated per degree.
/// Reduction-shaped equipment is a single rightward leg.
struct EquipmentSide {
  StrongEquivalence eq;
  bool trivial = false;
  std::string provenance;  // "trivial" | "morse" | "file"
  std::optional<VectorField> field;

  ComplexPtr top() const { return eq.left_end(); }
  ComplexPtr effective() const { return eq.right_end(); }

  bool reduction_shaped() const {
    return eq.legs().size() == 1 && !eq.legs()[0].leftward;
  }
  const Reduction& as_reduction() const {
    if (!reduction_shaped())
      throw PreconditionError("equipment is not reduction-shaped");
    return eq.legs()[0].red;
  }
  /// Left and right legs of the zig-zag C <= D => EC (a reduction-shaped
  /// side is widened with a trivial left leg).
  std::pair<Reduction, Reduction> legs() const {
    if (reduction_shaped()) {
      const Reduction& r = eq.legs()[0].red;
      return {trivial_reduction(r.top), r};
    }
    if (eq.legs().size() == 2 && eq.legs()[0].leftward &&
        !eq.legs()[1].leftward)
      return {eq.legs()[0].red, eq.legs()[1].red};
    throw PreconditionError("equipment zig-zag must be C <= D => EC");
  }
};

inline EquipmentSide trivial_equipment(ComplexPtr C) {
  return EquipmentSide{StrongEquivalence(trivial_reduction(std::move(C))),
                       true, "trivial", std::nullopt};
}

inline EquipmentSide morse_equipment(const VectorField& V, ComplexPtr top,
                                     int guard, StatsPtr stats = nullptr) {
  MorseData m = morse_reduction(V, guard, stats, std::move(top));
  return EquipmentSide{StrongEquivalence(m.reduction), false, "morse",
                       m.field};
}

struct Diagnostics {
  std::string route;
  int guard = 0;
  long long series_evaluations = 0;
  long long max_series_terms = 0;
  std::vector<int> hd0_witnesses;
  long long components_checked = 0;
};

struct PipelineResult {
  ComplexPtr effective;           // EC(F) (x) EC(B) with the new differential
  StrongEquivalence equivalence;  // C(E) <=> effective
  std::vector<HomologyGroup> homology;  // degrees 0..max_dim
  Diagnostics diagnostics;
};

struct RouteOptions {
  int max_dim = 6;
  int guard = kDefaultGuard;
  unsigned seed = 0;
  int sample_count = 50;
};

inline bool zero_reduced(const GroupPtr& G) {
  const auto& cells = G->space->nondegenerate(0);
  return cells && cells->size() == 1;
}

// ---------------------------------------------------------------------------
// Formula (2) recurrences: b_{i+1} = h_B d_0 b_i, y_{i+1} = g_F f_F
// sigma(y_i (x) t(front-1-face of b_i)); the degree-n slice of
// (h_{F(x)B} (t-cap))^i (y (x) b) is y_i (x) b_i, which is asserted against
// the direct iterate.

struct Formula2Step {
  FormalSum y, b;
};

inline std::vector<Formula2Step> formula2_components(
    const Tcp& t, const Reduction& rF, const Reduction& rB,
    const TwistingCochain& tc, const Gen& y0, int k, const Gen& b0, int n,
    int guard) {
  if (n < 1) throw Error("formula2 needs base dimension >= 1");
  SpacePtr B = t.base;
  GradedMap sigma = sigma_action_map(t.action);
  GradedMap cap = cap_product_map(t, tc, CapMode::Formula1);
  GradedMap h_fb = add(tensor_map(rF.h, GradedMap::identity()),
                       tensor_map(compose(rF.g, rF.f), rB.h));
  GradedMap d0B(-1, [B](const Gen& g, int m) {
    return m >= 1 ? chain_of(B->face(0, Simplex({}, g, m))) : FormalSum();
  });
  GradedMap tilde(0, [B, n](const Gen& g, int m) {
    // front 1-face of a degree-n base simplex, as a chain
    if (m != n) throw Error("formula2: unexpected base degree");
    return chain_of(B->tilde_d(Simplex({}, g, n), n - 1));
  });

  std::vector<Formula2Step> steps;
  steps.push_back(Formula2Step{FormalSum(y0), FormalSum(b0)});
  FormalSum iterate = tensor_chains(FormalSum(y0), k, FormalSum(b0), n);
  auto project_n = [n](const FormalSum& c) {
    FormalSum out;
    for (const auto& [g, coeff] : c.terms())
      if (tensor_of(g).ydeg == n) out += FormalSum(g, coeff);
    return out;
  };
  for (int i = 1; i <= guard; ++i) {
    const Formula2Step& prev = steps.back();
    if (prev.y.is_zero() || prev.b.is_zero()) break;
    FormalSum b_next = rB.h(d0B(prev.b, n), n - 1);
    FormalSum tfront = tc.apply_chain(tilde(prev.b, n), 1);
    FormalSum y_next =
        rF.g(rF.f(sigma(tensor_chains(prev.y, k, tfront, 0), k), k), k);
    iterate = h_fb(cap(iterate, k + n), k + n - 1);
    FormalSum expect = tensor_chains(y_next, k, b_next, n);
    if (project_n(iterate) != expect)
      throw Error("formula (2) slice mismatch at step " + std::to_string(i) +
                  " for " + to_string(y0) + " (x) " + to_string(b0));
    steps.push_back(Formula2Step{std::move(y_next), std::move(b_next)});
    if (steps.back().y.is_zero() || steps.back().b.is_zero()) break;
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Sampling support for OPEN sides (the only OPEN builtin space is K(Z,1)).

inline std::vector<std::pair<int, Gen>> sample_space_gens(const SpacePtr& X,
                                                          int maxdim,
                                                          int count,
                                                          Sampler& sampler) {
  std::vector<std::pair<int, Gen>> out;
  bool open = false;
  for (int d = 0; d <= maxdim; ++d)
    if (!X->nondegenerate(d)) open = true;
  if (!open) {
    for (int d = 0; d <= maxdim; ++d)
      for (const Gen& g : *X->nondegenerate(d)) out.emplace_back(d, g);
    return out;
  }
  if (X->name() != "K(Z,1)")
    throw Error("no sampler for OPEN space " + X->name());
  for (int i = 0; i < count; ++i) {
    int d = 1 + static_cast<int>(sampler.int_in(0, maxdim - 1));
    out.emplace_back(d, sampler.kz1_core(d).core);
  }
  out.emplace_back(0, Gen::tuple({}));
  return out;
}

// ---------------------------------------------------------------------------
// Routes

namespace pipedetail {

inline PipelineResult finish(const Tcp& t, const EquipmentSide& eqF,
                             const EquipmentSide& eqB, const RouteOptions& opt,
                             StatsPtr stats, const std::string& label) {
  const Reduction& rF = eqF.as_reduction();
  const Reduction& rB = eqB.as_reduction();
  if (rF.top != t.c_fiber || rB.top != t.c_base)
    throw PreconditionError("equipment endpoints do not match the TCP");
  TwistedEz tez = twisted_ez(t, opt.guard, stats);
  ComplexPtr ect =
      tensor_complex(rF.bottom, rB.bottom,
                     "EC(" + t.fiber->name() + ") (x) EC(" + t.base->name() + ")");
  Reduction r_fb = tensor_reduction(rF, rB, TensorHomotopy::Left,
                                    tez.ez.bottom, ect);
  BplOutput out;
  try {
    out = basic_perturbation_lemma(r_fb, tez.delta_t, opt.guard, stats,
                                   tez.bottom);
  } catch (const NilpotencyGuardExceeded& e) {
    throw NilpotencyGuardExceeded(
        label + ": per-element termination hypothesis not witnessed within "
                "guard " +
        std::to_string(opt.guard) + " (" + e.what() + ")");
  }
  Reduction total = compose_reductions(tez.reduction, out.reduction);

  PipelineResult res{out.reduction.bottom, StrongEquivalence(total), {}, {}};
  for (int n = 0; n <= opt.max_dim; ++n)
    res.homology.push_back(homology_group(*res.effective, n));
  res.diagnostics.route = label;
  res.diagnostics.guard = opt.guard;
  if (stats) {
    std::lock_guard<std::mutex> lock(stats->mu);
    res.diagnostics.series_evaluations = stats->evaluations;
    res.diagnostics.max_series_terms = stats->max_terms;
  }
  return res;
}

/// y_1 = 0 or b_1 = 0 on every sampled tensor generator: the a-priori
/// discharge of the theorem hypothesis under the corollary conditions.
inline long long assert_first_step_vanishes(const Tcp& t,
                                            const EquipmentSide& eqF,
                                            const EquipmentSide& eqB,
                                            const RouteOptions& opt,
                                            int max_witness) {
  const Reduction& rF = eqF.as_reduction();
  const Reduction& rB = eqB.as_reduction();
  TwistingCochain tc(principal_tcp(t), opt.guard);
  Sampler sampler(opt.seed);
  auto ys = sample_space_gens(t.fiber, opt.max_dim, opt.sample_count, sampler);
  auto bs = sample_space_gens(t.base, opt.max_dim, opt.sample_count, sampler);
  long long checked = 0;
  for (const auto& [k, y] : ys)
    for (const auto& [n, b] : bs) {
      if (n < 1 || k + n > opt.max_dim + 1) continue;
      auto steps =
          formula2_components(t, rF, rB, tc, y, k, b, n, opt.guard);
      if (static_cast<int>(steps.size()) > max_witness + 1)
        throw Error("recurrence did not terminate within " +
                    std::to_string(max_witness) + " step(s) on " +
                    to_string(y) + " (x) " + to_string(b));
      ++checked;
    }
  return checked;
}

}  // namespace pipedetail

/// Theorem route: tensor the equipment, perturb by the twisted differential,
/// verify the termination hypothesis constructively while evaluating.
inline PipelineResult route_thm41(const Tcp& t, const EquipmentSide& eqF,
                                  const EquipmentSide& eqB,
                                  const RouteOptions& opt = {}) {
  auto stats = std::make_shared<SeriesStats>();
  return pipedetail::finish(t, eqF, eqB, opt, stats, "thm41");
}

/// Corollary route with the hypothesis discharged a priori: either the
/// structure group is 0-reduced (so t vanishes on 1-simplices and y_1 = 0)
/// or the base equipment is trivial (so b_1 = h_B d_0 b = 0).
inline PipelineResult route_cor42(const Tcp& t, const EquipmentSide& eqF,
                                  const EquipmentSide& eqB,
                                  const RouteOptions& opt = {}) {
  if (!zero_reduced(t.group) && !eqB.trivial)
    throw PreconditionError(
        "cor42 needs a 0-reduced structure group or trivial base equipment");
  auto stats = std::make_shared<SeriesStats>();
  PipelineResult res = pipedetail::finish(t, eqF, eqB, opt, stats, "cor42");
  res.diagnostics.components_checked =
      pipedetail::assert_first_step_vanishes(t, eqF, eqB, opt, 1);
  return res;
}

/// Vector-field route: the base equipment comes from a discrete vector field
/// satisfying (*), so (h_B d_0)^2 = 0 and every recurrence stops by step 2.
inline PipelineResult route_cor53(const Tcp& t, const EquipmentSide& eqF,
                                  const EquipmentSide& eqB,
                                  const RouteOptions& opt = {}) {
  if (eqB.provenance != "morse" || !eqB.field)
    throw PreconditionError("cor53 needs vector-field base equipment");
  Sampler sampler(opt.seed);
  auto bs = sample_space_gens(t.base, opt.max_dim, opt.sample_count, sampler);
  std::vector<std::pair<int, Gen>> star_samples = bs;
  auto star = check_star_condition(*eqB.field, star_samples);
  if (!star.ok())
    throw PreconditionError("condition (*) fails: " + star.summary());

  auto stats = std::make_shared<SeriesStats>();
  PipelineResult res = pipedetail::finish(t, eqF, eqB, opt, stats, "cor53");
  const Reduction& rB = eqB.as_reduction();
  for (const auto& [n, b] : bs) {
    int w = hd0_nilpotency_witness(rB, t.base, Simplex({}, b, n), opt.guard);
    if (w > 2)
      throw Error("(h_B d_0) nilpotency witness " + std::to_string(w) +
                  " > 2 on " + to_string(b) + ", condition (*) violated");
    res.diagnostics.hd0_witnesses.push_back(w);
  }
  res.diagnostics.components_checked =
      pipedetail::assert_first_step_vanishes(t, eqF, eqB, opt, 2);
  return res;
}

/// Strong-equivalence route: tensor the equivalence legs, push the cap
/// perturbation through the left legs with the EPL, then apply the BPL on
/// the right legs; the result is a three-leg zig-zag.
inline PipelineResult route_cor44(const Tcp& t, const EquipmentSide& eqF,
                                  const EquipmentSide& eqB,
                                  const RouteOptions& opt = {}) {
  if (!zero_reduced(t.group) && !eqB.trivial)
    throw PreconditionError(
        "cor44 needs a 0-reduced structure group or trivial base equipment");
  auto [rF1, rF2] = eqF.legs();
  auto [rB1, rB2] = eqB.legs();
  if (rF1.bottom != t.c_fiber || rB1.bottom != t.c_base)
    throw PreconditionError("equipment endpoints do not match the TCP");

  auto stats = std::make_shared<SeriesStats>();
  TwistedEz tez = twisted_ez(t, opt.guard, stats);
  ComplexPtr dt = tensor_complex(rF1.top, rB1.top, "D(F) (x) D(B)");
  ComplexPtr ect = tensor_complex(rF2.bottom, rB2.bottom,
                                  "EC(" + t.fiber->name() + ") (x) EC(" +
                                      t.base->name() + ")");
  Reduction r1 = tensor_reduction(rF1, rB1, TensorHomotopy::Left, dt,
                                  tez.ez.bottom);
  Reduction r2 = tensor_reduction(rF2, rB2, TensorHomotopy::Left, dt, ect);

  // EPL on r1 with the cap perturbation, sharing the perturbed top with the
  // BPL applied to r2
  GradedMap delta_dt = compose(r1.g, compose(tez.delta_t, r1.f));
  ComplexPtr dt_hat = perturbed_complex(dt, delta_dt, dt->name() + "~");
  Reduction r1p{dt_hat, tez.bottom, r1.f, r1.g, r1.h};
  BplOutput out2;
  try {
    out2 = basic_perturbation_lemma(r2, delta_dt, opt.guard, stats, dt_hat);
  } catch (const NilpotencyGuardExceeded& e) {
    throw NilpotencyGuardExceeded(std::string("cor44: ") + e.what());
  }

  PipelineResult res{out2.reduction.bottom,
                     StrongEquivalence(tez.reduction), {}, {}};
  res.equivalence.append(r1p, /*leftward=*/true);
  res.equivalence.append(out2.reduction, /*leftward=*/false);
  for (int n = 0; n <= opt.max_dim; ++n)
    res.homology.push_back(homology_group(*res.effective, n));
  res.diagnostics.route = "cor44";
  res.diagnostics.guard = opt.guard;
  {
    std::lock_guard<std::mutex> lock(stats->mu);
    res.diagnostics.series_evaluations = stats->evaluations;
    res.diagnostics.max_series_terms = stats->max_terms;
  }
  return res;
}

/// Homology of C_*(E) by direct Smith reduction; FINITE spaces only.
inline std::vector<HomologyGroup> direct_homology(const Tcp& t, int max_dim) {
  std::vector<HomologyGroup> out;
  for (int n = 0; n <= max_dim; ++n)
    out.push_back(homology_group(*t.c_total, n));
  return out;
}

enum class Method { Auto, Thm41, Cor42, Cor44, Cor53, Direct };

inline Method method_from_string(const std::string& s) {
  if (s == "auto") return Method::Auto;
  if (s == "thm41") return Method::Thm41;
  if (s == "cor42") return Method::Cor42;
  if (s == "cor44") return Method::Cor44;
  if (s == "cor53") return Method::Cor53;
  if (s == "direct") return Method::Direct;
  throw ValidationError("unknown method: " + s);
}

/// Auto tries the cheapest precondition first: cor42, then cor53, then the
/// guarded theorem route.
inline PipelineResult run_route(const Tcp& t, Method m,
                                const EquipmentSide& eqF,
                                const EquipmentSide& eqB,
                                const RouteOptions& opt = {}) {
  switch (m) {
    case Method::Thm41: return route_thm41(t, eqF, eqB, opt);
    case Method::Cor42: return route_cor42(t, eqF, eqB, opt);
    case Method::Cor44: {
      return route_cor44(t, eqF, eqB, opt);
    }
    case Method::Cor53: return route_cor53(t, eqF, eqB, opt);
    case Method::Direct: {
      PipelineResult res{t.c_total,
                         StrongEquivalence(trivial_reduction(t.c_total)),
                         direct_homology(t, opt.max_dim),
                         {}};
      res.diagnostics.route = "direct";
      return res;
    }
    case Method::Auto:
      try {
        return route_cor42(t, eqF, eqB, opt);
      } catch (const PreconditionError&) {
      }
      try {
        return route_cor53(t, eqF, eqB, opt);
      } catch (const PreconditionError&) {
      }
      return route_thm41(t, eqF, eqB, opt);
  }
  throw Error("unreachable");
}

/// Homology representatives of the effective complex transported back to
/// cycles in C_*(E) along the zig-zag.
struct TransportedClass {
  int degree;
  Int order;  // 0 for free classes
  FormalSum effective_cycle;
  FormalSum total_cycle;
};

inline std::vector<TransportedClass> transport_representatives(
    const PipelineResult& res, int degree) {
  std::vector<TransportedClass> out;
  auto reps = homology_representatives(*res.effective, degree);
  auto carry = [&](const FormalSum& z, const Int& order) {
    FormalSum back = res.equivalence.transport(z, degree, /*from_left=*/false);
    out.push_back(TransportedClass{degree, order, z, back});
  };
  for (const auto& z : reps.free_part) carry(z, 0);
  for (const auto& [z, d] : reps.torsion_part) carry(z, d);
  return out;
}

// ---------------------------------------------------------------------------
// Builtin TCPs with their default equipment.

struct BuiltinSetup {
  Tcp tcp;
  EquipmentSide fiber_eq, base_eq;
};

inline BuiltinSetup builtin_setup(const std::string& name,
                                  int guard = kDefaultGuard) {
  if (name == "klein" || name == "torus") {
    Tcp t = name == "klein" ? klein_tcp() : torus_tcp();
    EquipmentSide f = trivial_equipment(t.c_fiber);
    EquipmentSide b = trivial_equipment(t.c_base);
    return BuiltinSetup{std::move(t), std::move(f), std::move(b)};
  }
  if (name == "hopf") {
    Tcp t = hopf_tcp();
    EquipmentSide f =
        morse_equipment(eml_vector_field(t.fiber), t.c_fiber, guard);
    EquipmentSide b = trivial_equipment(t.c_base);
    return BuiltinSetup{std::move(t), std::move(f), std::move(b)};
  }
  if (name == "double-cover") {
    Tcp t = double_cover_tcp();
    EquipmentSide f = trivial_equipment(t.c_fiber);
    EquipmentSide b = morse_equipment(eml_vector_field(t.base), t.c_base, guard);
    return BuiltinSetup{std::move(t), std::move(f), std::move(b)};
  }
  throw ValidationError("unknown builtin: " + name +
                        " (expected klein|torus|hopf|double-cover)");
}

}  // namespace tcp

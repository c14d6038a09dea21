#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcp/perturbation.hpp"
#include "tcp/simplicial.hpp"
#include "tcp/spaces.hpp"

namespace tcp {

enum class CellClass { Source, Target, Critical };

inline const char* to_cstring(CellClass c) {
  switch (c) {
    case CellClass::Source: return "SOURCE";
    case CellClass::Target: return "TARGET";
    default: return "CRITICAL";
  }
}

/// Discrete vector field: a disjoint pairing of nondegenerate simplices
/// (sigma, tau) with sigma = d_i tau for exactly one index i.  `pair` maps a
/// source to its target; `classify` must be consistent with the pairing.
/// `critical_basis` enumerates the critical cells per dimension (derived by
/// filtering for FINITE spaces when omitted).
struct VectorField {
  SpacePtr space;
  std::function<std::optional<Simplex>(const Simplex&)> pair;
  std::function<CellClass(const Simplex&)> classify;
  std::function<std::optional<std::vector<Gen>>(int)> critical_basis;
};

/// The unique i with sigma = d_i tau; throws unless exactly one exists.
inline int incidence_index(const SimplicialSet& X, const Simplex& sigma,
                           const Simplex& tau) {
  int found = -1;
  for (int i = 0; i <= tau.dim(); ++i) {
    if (X.face(i, tau) == sigma) {
      if (found >= 0)
        throw ValidationError("vector field pairing " + to_string(sigma) +
                              " -> " + to_string(tau) +
                              ": face index not unique (" +
                              std::to_string(found) + " and " +
                              std::to_string(i) + ")");
      found = i;
    }
  }
  if (found < 0)
    throw ValidationError("vector field pairing " + to_string(sigma) + " -> " +
                          to_string(tau) + ": source is not a face of target");
  return found;
}

/// The unique source of a target cell, found by scanning its faces.
inline std::pair<Simplex, int> source_of(const VectorField& V,
                                         const Simplex& tau) {
  std::optional<Simplex> src;
  int index = -1;
  for (int i = 0; i <= tau.dim(); ++i) {
    Simplex f = V.space->face(i, tau);
    if (f.degenerate()) continue;
    if (V.classify(f) != CellClass::Source) continue;
    auto t = V.pair(f);
    if (!t || !(*t == tau)) continue;
    if (src && !(*src == f))
      throw ValidationError("vector field: target " + to_string(tau) +
                            " has two sources");
    if (!src) {
      src = f;
      index = i;
    } else if (index != i) {
      throw ValidationError("vector field pairing " + to_string(f) + " -> " +
                            to_string(tau) + ": face index not unique");
    }
  }
  if (!src)
    throw ValidationError("vector field: target " + to_string(tau) +
                          " has no source");
  return {*src, index};
}

/// Pairing/partition sanity on a sample of nondegenerate simplices.
inline CheckReport check_vector_field(
    const VectorField& V, const std::vector<std::pair<int, Gen>>& samples) {
  CheckReport rep;
  for (const auto& [n, g] : samples) {
    Simplex s = V.space->from_core(g, n);
    CellClass cls = V.classify(s);
    auto t = V.pair(s);
    ++rep.checked;
    if (cls == CellClass::Source) {
      if (!t) {
        rep.failures.push_back({"pairing", to_string(g), "source without target"});
        continue;
      }
      if (t->degenerate() || t->dim() != n + 1) {
        rep.failures.push_back(
            {"pairing", to_string(g), "target must be nondegenerate of dim+1"});
        continue;
      }
      try {
        incidence_index(*V.space, s, *t);
        if (V.classify(*t) != CellClass::Target)
          rep.failures.push_back(
              {"partition", to_string(g), "paired cell not classified TARGET"});
        auto [src, idx] = source_of(V, *t);
        (void)idx;
        if (!(src == s))
          rep.failures.push_back(
              {"disjointness", to_string(g), "target has a different source"});
      } catch (const ValidationError& e) {
        rep.failures.push_back({"pairing", to_string(g), e.what()});
      }
    } else {
      if (t)
        rep.failures.push_back(
            {"partition", to_string(g),
             std::string(to_cstring(cls)) + " cell has a pairing"});
      if (cls == CellClass::Target) {
        try {
          source_of(V, s);
        } catch (const ValidationError& e) {
          rep.failures.push_back({"partition", to_string(g), e.what()});
        }
      }
    }
  }
  return rep;
}

/// Condition (*): d_0 sigma a source forces sigma to be a source.
inline CheckReport check_star_condition(
    const VectorField& V, const std::vector<std::pair<int, Gen>>& samples) {
  CheckReport rep;
  for (const auto& [n, g] : samples) {
    if (n == 0) continue;
    Simplex s = V.space->from_core(g, n);
    Simplex d0 = V.space->face(0, s);
    ++rep.checked;
    if (d0.degenerate()) continue;
    if (V.classify(d0) == CellClass::Source &&
        V.classify(s) != CellClass::Source)
      rep.failures.push_back({"(*)", to_string(g),
                              "d0 is a source but the simplex is " +
                                  std::string(to_cstring(V.classify(s)))});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Eilenberg-MacLane vector field on K(Z,1):
//   [a1|..|an] with an > 1  ->  [a1|..|a_{n-1}|an-1|1]
//   [a1|..|an] with an < 0  ->  [a1|..|an|1]
// Sources are the tuples not ending in 1 (n > 0), targets end in 1 (n > 1),
// critical cells are [] and [1].

inline VectorField eml_vector_field(SpacePtr kz1_space) {
  SpacePtr X = std::move(kz1_space);
  auto pair = [](const Simplex& s) -> std::optional<Simplex> {
    const auto& a = kz1_entries(s.core);
    if (a.empty() || a.back() == 1) return std::nullopt;
    std::vector<long long> t = a;
    if (t.back() > 1) {
      t.back() -= 1;
      t.push_back(1);
    } else {
      t.push_back(1);
    }
    return kz1_simplex(std::move(t));
  };
  auto classify = [](const Simplex& s) {
    const auto& a = kz1_entries(s.core);
    if (a.empty()) return CellClass::Critical;
    if (a.back() != 1) return CellClass::Source;
    if (a.size() == 1) return CellClass::Critical;  // [1]
    return CellClass::Target;
  };
  auto critical = [](int n) -> std::optional<std::vector<Gen>> {
    if (n == 0) return std::vector<Gen>{Gen::tuple({})};
    if (n == 1) return std::vector<Gen>{Gen::tuple({1})};
    return std::vector<Gen>{};
  };
  return VectorField{X, pair, classify, critical};
}

inline VectorField eml_vector_field(const GroupPtr& kz1_group) {
  return eml_vector_field(kz1_group->space);
}

// ---------------------------------------------------------------------------
// Induced reduction.  The differential splits as d = d_V + rest, where d_V
// sends each target to its source with the incidence sign.  (C, d_V) retracts
// onto the critical complex with zero differential; feeding the rest back in
// through the Basic Perturbation Lemma yields the Morse reduction, with the
// series running exactly over the V-paths.

struct MorseData {
  VectorField field;
  ComplexPtr top;     // C_*(X)
  ComplexPtr bottom;  // critical complex with the induced differential
  Reduction reduction;
  GradedMap h0;  // the elementary pairing homotopy (for diagnostics)
};

inline MorseData morse_reduction(const VectorField& V, int guard,
                                 StatsPtr stats = nullptr,
                                 ComplexPtr top = nullptr) {
  SpacePtr X = V.space;
  if (!top) top = normalized_chains(X);

  VectorField field = V;
  if (!field.critical_basis) {
    field.critical_basis = [V, X](int n) -> std::optional<std::vector<Gen>> {
      auto cells = X->nondegenerate(n);
      if (!cells) return std::nullopt;
      std::vector<Gen> out;
      for (const Gen& g : *cells)
        if (V.classify(X->from_core(g, n)) == CellClass::Critical)
          out.push_back(g);
      return out;
    };
  }

  GradedMap d_v(-1, [field, X](const Gen& g, int n) -> FormalSum {
    Simplex s = X->from_core(g, n);
    if (field.classify(s) != CellClass::Target) return FormalSum();
    auto [src, i] = source_of(field, s);
    Int sign = (i % 2 == 0) ? 1 : -1;
    return FormalSum(src.core, sign);
  });
  GradedMap h0(1, [field, X](const Gen& g, int n) -> FormalSum {
    Simplex s = X->from_core(g, n);
    if (field.classify(s) != CellClass::Source) return FormalSum();
    Simplex tau = *field.pair(s);
    int i = incidence_index(*X, s, tau);
    Int sign = (i % 2 == 0) ? -1 : 1;  // h0 = -(incidence)^{-1} tau
    return FormalSum(tau.core, sign);
  });
  GradedMap f0(0, [field, X](const Gen& g, int n) -> FormalSum {
    return field.classify(X->from_core(g, n)) == CellClass::Critical
               ? FormalSum(g)
               : FormalSum();
  });
  GradedMap g0 = GradedMap::identity();

  ComplexPtr top_v =
      make_complex("(" + top->name() + ", d_V)",
                   [top](int n) { return top->try_basis(n); }, d_v);
  ComplexPtr bottom0 = make_complex("D(" + X->name() + ")0",
                                    field.critical_basis, GradedMap::zero(-1));
  Reduction base{top_v, bottom0, f0, g0, h0};
  GradedMap rest = sub(top->diff(), d_v);
  try {
    BplOutput out =
        basic_perturbation_lemma(base, rest, guard, stats, top, nullptr);
    return MorseData{field, top, out.reduction.bottom, out.reduction, h0};
  } catch (const NilpotencyGuardExceeded& e) {
    throw AdmissibilityGuardExceeded(
        std::string("vector field not admissible as far as checked: ") +
        e.what());
  }
}

/// Smallest i with (h_B d_0)^i b = 0 (d_0 termwise, vanishing on vertices).
inline int hd0_nilpotency_witness(const Reduction& rB, const SpacePtr& B,
                                  const Simplex& b, int guard = kDefaultGuard) {
  FormalSum c = chain_of(b);
  int n = b.dim();
  for (int i = 1; i <= guard; ++i) {
    // apply d_0 then h_B; degree is preserved overall
    FormalSum faces;
    if (n >= 1)
      for (const auto& [g, coeff] : c.terms())
        faces += coeff * chain_of(B->face(0, B->from_core(g, n)));
    c = rB.h(faces, n - 1);
    if (c.is_zero()) return i;
  }
  throw AdmissibilityGuardExceeded("(h_B d_0) iteration exceeded guard");
}

}  // namespace tcp

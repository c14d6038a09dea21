#pragma once

#include <memory>
#include <string>

#include "tcp/reduction.hpp"

namespace tcp {

inline constexpr int kDefaultGuard = 64;

/// Accounting for the lazy perturbation series.
struct SeriesStats {
  long long evaluations = 0;
  long long max_terms = 0;
  std::mutex mu;

  void record(long long terms) {
    std::lock_guard<std::mutex> lock(mu);
    ++evaluations;
    if (terms > max_terms) max_terms = terms;
  }
};

using StatsPtr = std::shared_ptr<SeriesStats>;

/// Per-element geometric series c + (a b)(c) + (a b)^2(c) + ... truncated at
/// the first vanishing term.  `a b` must have degree 0.  Throws
/// NilpotencyGuardExceeded after `guard` nonzero iterates.
inline GradedMap perturbation_series(const GradedMap& a, const GradedMap& b,
                                     int guard, StatsPtr stats = nullptr) {
  if (a.shift() + b.shift() != 0)
    throw Error("perturbation series needs a degree-0 composite");
  const int bshift = b.shift();
  return GradedMap(0, [a, b, bshift, guard, stats](const Gen& g, int n) {
    FormalSum acc(g);
    FormalSum term(g);
    long long k = 0;
    for (;;) {
      term = a(b(term, n), n + bshift);
      if (term.is_zero()) break;
      if (++k > guard)
        throw NilpotencyGuardExceeded(
            "perturbation series exceeded guard " + std::to_string(guard) +
            " on " + to_string(g) + " (degree " + std::to_string(n) + ")");
      acc += term;
    }
    if (stats) stats->record(k);
    return acc;
  });
}

struct BplOutput {
  Reduction reduction;
  GradedMap delta_bottom;  // the induced perturbation on the bottom
};

/// Basic Perturbation Lemma.  Given r: (C, d) => (D, d') and a perturbation
/// delta with (d + delta)^2 = 0 and h delta pointwise nilpotent, returns
///   f' = f (1 + (delta h) + (delta h)^2 + ...),
///   g' = (1 + (h delta) + ...) g,
///   h' = (1 + (h delta) + ...) h,
///   delta' = f delta (1 + (h delta) + ...) g
/// between (C, d + delta) and (D, d' + delta').  The series are evaluated
/// lazily per element; termination beyond `guard` nonzero terms raises
/// NilpotencyGuardExceeded.  `top` / `bottom` may supply already-built
/// complex objects with the same differentials, so callers can share
/// endpoints across reductions.
inline BplOutput basic_perturbation_lemma(const Reduction& r,
                                          const GradedMap& delta, int guard,
                                          StatsPtr stats = nullptr,
                                          ComplexPtr top = nullptr,
                                          ComplexPtr bottom = nullptr) {
  if (delta.shift() != -1) throw Error("perturbation must have degree -1");
  GradedMap series_dh = perturbation_series(delta, r.h, guard, stats);
  GradedMap series_hd = perturbation_series(r.h, delta, guard, stats);
  GradedMap f2 = compose(r.f, series_dh);
  GradedMap g2 = compose(series_hd, r.g);
  GradedMap h2 = compose(series_hd, r.h);
  GradedMap delta2 = compose(r.f, compose(delta, compose(series_hd, r.g)));
  if (!top) top = perturbed_complex(r.top, delta, r.top->name() + "~");
  if (!bottom)
    bottom = perturbed_complex(r.bottom, delta2, r.bottom->name() + "~");
  return BplOutput{Reduction{std::move(top), std::move(bottom), std::move(f2),
                             std::move(g2), std::move(h2)},
                   std::move(delta2)};
}

/// Easy Perturbation Lemma: a bottom perturbation delta' pulls back to
/// g delta' f on top; the reduction data is unchanged.
inline Reduction easy_perturbation_lemma(const Reduction& r,
                                         const GradedMap& delta_bottom,
                                         ComplexPtr top = nullptr,
                                         ComplexPtr bottom = nullptr) {
  if (delta_bottom.shift() != -1)
    throw Error("perturbation must have degree -1");
  GradedMap delta_top = compose(r.g, compose(delta_bottom, r.f));
  if (!top) top = perturbed_complex(r.top, delta_top, r.top->name() + "~");
  if (!bottom)
    bottom = perturbed_complex(r.bottom, delta_bottom, r.bottom->name() + "~");
  return Reduction{std::move(top), std::move(bottom), r.f, r.g, r.h};
}

/// (d + delta)^2 = 0 on the supplied generators.
inline CheckReport check_perturbation(const ChainComplex& C,
                                      const GradedMap& delta,
                                      const std::vector<std::pair<int, Gen>>&
                                          samples) {
  CheckReport rep;
  GradedMap d = add(C.diff(), delta);
  for (const auto& [n, g] : samples) {
    FormalSum v = d(d.apply_gen(g, n), n - 1);
    detail::expect_zero(rep, v, "(d+delta)^2=0", g, n);
  }
  return rep;
}

}  // namespace tcp

#pragma once

#include <random>
#include <vector>

#include "tcp/spaces.hpp"

namespace tcp {

/// Deterministic pseudorandom simplices for property checks on OPEN spaces.
class Sampler {
 public:
  explicit Sampler(unsigned seed) : rng_(seed) {}

  long long int_in(long long lo, long long hi) {
    std::uniform_int_distribution<long long> d(lo, hi);
    return d(rng_);
  }

  /// Nondegenerate bar simplex with entries in [-bound, bound] \ {0}.
  Simplex kz1_core(int dim, int bound = 9) {
    std::vector<long long> t(static_cast<std::size_t>(dim));
    for (auto& v : t)
      do {
        v = int_in(-bound, bound);
      } while (v == 0);
    return kz1_simplex(std::move(t));
  }

  /// Canonical bar simplex, zeros (degeneracies) allowed.
  Simplex kz1_any(int dim, int bound = 9) {
    std::vector<long long> t(static_cast<std::size_t>(dim));
    for (auto& v : t) v = int_in(-bound, bound);
    return kz1_simplex(std::move(t));
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(int_in(0, static_cast<long long>(v.size()) - 1))];
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace tcp

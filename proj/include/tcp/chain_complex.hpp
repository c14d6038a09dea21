#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcp/graded_map.hpp"

namespace tcp {

/// Chain complex of free abelian groups.  Each degree is either FINITE
/// (the basis rule returns the generator list) or OPEN (nullopt: elements
/// exist by construction only, as in locally effective complexes).
/// Negative degrees are empty.
class ChainComplex {
 public:
  using BasisRule = std::function<std::optional<std::vector<Gen>>(int)>;

  ChainComplex(std::string name, BasisRule basis, GradedMap diff)
      : name_(std::move(name)),
        basis_(std::move(basis)),
        diff_(std::move(diff)) {
    if (diff_.shift() != -1) throw Error("differential must have degree -1");
  }

  const std::string& name() const { return name_; }
  const GradedMap& diff() const { return diff_; }

  bool finite(int n) const { return static_cast<bool>(basis_opt(n)); }

  /// FINITE basis of degree n; throws EffectivenessError on OPEN degrees.
  const std::vector<Gen>& basis(int n) const {
    const auto& b = basis_opt(n);
    if (!b)
      throw EffectivenessError(name_ + ": degree " + std::to_string(n) +
                               " is not effective (OPEN basis)");
    return *b;
  }

  const std::optional<std::vector<Gen>>& try_basis(int n) const {
    return basis_opt(n);
  }

  FormalSum boundary(const FormalSum& c, int n) const { return diff_(c, n); }

 private:
  const std::optional<std::vector<Gen>>& basis_opt(int n) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    std::optional<std::vector<Gen>> b;
    if (n < 0)
      b = std::vector<Gen>{};
    else
      b = basis_(n);
    return memo_.emplace(n, std::move(b)).first->second;
  }

  std::string name_;
  BasisRule basis_;
  GradedMap diff_;
  mutable std::mutex mu_;
  mutable std::unordered_map<int, std::optional<std::vector<Gen>>> memo_;
};

using ComplexPtr = std::shared_ptr<const ChainComplex>;

inline ComplexPtr make_complex(std::string name, ChainComplex::BasisRule basis,
                               GradedMap diff) {
  return std::make_shared<ChainComplex>(std::move(name), std::move(basis),
                                        std::move(diff));
}

/// Same underlying graded group, differential replaced by d + delta.
inline ComplexPtr perturbed_complex(const ComplexPtr& c, const GradedMap& delta,
                                    std::string name) {
  ComplexPtr base = c;
  return make_complex(
      std::move(name), [base](int n) { return base->try_basis(n); },
      add(base->diff(), delta));
}

/// Sum of the coefficients of a degree-0 chain.
inline Int augmentation(const FormalSum& c, int degree = 0) {
  if (degree != 0)
    throw Error("augmentation applies to degree-0 chains, got degree " +
                std::to_string(degree));
  Int s = 0;
  for (const auto& [g, coeff] : c.terms()) s += coeff;
  return s;
}

}  // namespace tcp

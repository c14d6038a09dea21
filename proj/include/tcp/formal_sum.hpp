#pragma once

#include <utility>
#include <vector>

#include "tcp/gen.hpp"
#include "tcp/ints.hpp"

namespace tcp {

/// Exact integer linear combination of generators, kept in canonical form:
/// terms sorted by generator order, no zero coefficients stored.
class FormalSum {
 public:
  using Term = std::pair<Gen, Int>;

  FormalSum() = default;
  explicit FormalSum(Gen g) { terms_.emplace_back(g, 1); }
  FormalSum(Gen g, Int c) {
    if (c != 0) terms_.emplace_back(g, std::move(c));
  }

  static FormalSum zero() { return FormalSum(); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  Int coeff(const Gen& g) const {
    for (const auto& [gen, c] : terms_)
      if (gen == g) return c;
    return Int(0);
  }

  FormalSum& operator+=(const FormalSum& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      terms_ = o.terms_;
      return *this;
    }
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      int c = cmp(terms_[i].first, o.terms_[j].first);
      if (c < 0) {
        merged.push_back(std::move(terms_[i++]));
      } else if (c > 0) {
        merged.push_back(o.terms_[j++]);
      } else {
        Int v = terms_[i].second + o.terms_[j].second;
        if (v != 0) merged.emplace_back(terms_[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) merged.push_back(std::move(terms_[i]));
    for (; j < o.terms_.size(); ++j) merged.push_back(o.terms_[j]);
    terms_ = std::move(merged);
    return *this;
  }

  FormalSum& operator-=(const FormalSum& o) { return *this += -o; }

  FormalSum operator-() const {
    FormalSum r;
    r.terms_.reserve(terms_.size());
    for (const auto& [g, c] : terms_) r.terms_.emplace_back(g, -c);
    return r;
  }

  FormalSum& scale(const Int& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [g, c] : terms_) c *= k;
    return *this;
  }

  friend FormalSum operator+(FormalSum a, const FormalSum& b) {
    a += b;
    return a;
  }
  friend FormalSum operator-(FormalSum a, const FormalSum& b) {
    a -= b;
    return a;
  }
  friend FormalSum operator*(const Int& k, FormalSum a) {
    a.scale(k);
    return a;
  }

  bool operator==(const FormalSum& o) const { return terms_ == o.terms_; }
  bool operator!=(const FormalSum& o) const { return !(*this == o); }

 private:
  std::vector<Term> terms_;
};

inline std::string to_string(const FormalSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, c] : s.terms()) {
    if (c > 0 && !first) out += " + ";
    if (c < 0) out += first ? "-" : " - ";
    Int a = abs(c);
    if (a != 1) out += a.str() + "*";
    out += to_string(g);
    first = false;
  }
  return out;
}

/// Chain of a simplex in the normalized complex: degenerate simplices
/// vanish, a nondegenerate one is its core generator.
inline FormalSum chain_of(const Simplex& s) {
  if (s.degenerate()) return FormalSum::zero();
  return FormalSum(s.core);
}

/// Bilinear tensor of two homogeneous chains.
inline FormalSum tensor_chains(const FormalSum& a, int adeg, const FormalSum& b,
                               int bdeg) {
  FormalSum out;
  for (const auto& [ga, ca] : a.terms())
    for (const auto& [gb, cb] : b.terms())
      out += FormalSum(Gen::tensor(ga, adeg, gb, bdeg), ca * cb);
  return out;
}

}  // namespace tcp

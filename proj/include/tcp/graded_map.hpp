#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "tcp/formal_sum.hpp"

namespace tcp {

/// Degree-shifting homomorphism given by its action on generators and
/// extended linearly.  Evaluation is pure and memoized per (generator,
/// degree), which makes the lazy perturbation series affordable on
/// infinitely generated complexes.
class GradedMap {
 public:
  using Rule = std::function<FormalSum(const Gen&, int degree)>;

  GradedMap() : GradedMap(0, [](const Gen&, int) { return FormalSum(); }) {}

  GradedMap(int shift, Rule rule) : state_(std::make_shared<State>()) {
    state_->shift = shift;
    state_->rule = std::move(rule);
  }

  int shift() const { return state_->shift; }

  FormalSum apply_gen(const Gen& g, int degree) const {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(g.id()) << 16) ^
        static_cast<std::uint64_t>(static_cast<std::uint32_t>(degree + 8));
    {
      std::lock_guard<std::mutex> lock(state_->mu);
      auto it = state_->memo.find(key);
      if (it != state_->memo.end()) return it->second;
    }
    FormalSum value = state_->rule(g, degree);
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->memo.emplace(key, std::move(value)).first->second;
  }

  /// Linear extension to a homogeneous chain of the given degree.
  FormalSum operator()(const FormalSum& c, int degree) const {
    FormalSum out;
    for (const auto& [g, coeff] : c.terms()) out += coeff * apply_gen(g, degree);
    return out;
  }

  static GradedMap identity() {
    return GradedMap(0, [](const Gen& g, int) { return FormalSum(g); });
  }
  static GradedMap zero(int shift) {
    return GradedMap(shift, [](const Gen&, int) { return FormalSum(); });
  }

 private:
  struct State {
    int shift = 0;
    Rule rule;
    std::unordered_map<std::uint64_t, FormalSum> memo;
    std::mutex mu;
  };
  std::shared_ptr<State> state_;
};

/// outer ∘ inner (inner applied first).
inline GradedMap compose(const GradedMap& outer, const GradedMap& inner) {
  int inner_shift = inner.shift();
  return GradedMap(outer.shift() + inner_shift,
                   [outer, inner, inner_shift](const Gen& g, int n) {
                     return outer(inner.apply_gen(g, n), n + inner_shift);
                   });
}

inline GradedMap add(const GradedMap& a, const GradedMap& b) {
  if (a.shift() != b.shift()) throw Error("GradedMap add: shift mismatch");
  return GradedMap(a.shift(), [a, b](const Gen& g, int n) {
    return a.apply_gen(g, n) + b.apply_gen(g, n);
  });
}

inline GradedMap sub(const GradedMap& a, const GradedMap& b) {
  if (a.shift() != b.shift()) throw Error("GradedMap sub: shift mismatch");
  return GradedMap(a.shift(), [a, b](const Gen& g, int n) {
    return a.apply_gen(g, n) - b.apply_gen(g, n);
  });
}

inline GradedMap scale(const Int& k, const GradedMap& a) {
  return GradedMap(a.shift(), [k, a](const Gen& g, int n) {
    FormalSum v = a.apply_gen(g, n);
    v.scale(k);
    return v;
  });
}

}  // namespace tcp

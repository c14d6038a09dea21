#pragma once

#include <vector>

#include "tcp/reduction.hpp"

namespace tcp {

/// Strong equivalence as a lazy zig-zag of reductions.  A leg tagged
/// `leftward` has its arrow pointing toward the previous endpoint, i.e. the
/// reduction goes X_i => X_{i-1}; a rightward leg goes X_{i-1} => X_i.
/// Adjacent endpoints must be the same complex object.
class StrongEquivalence {
 public:
  struct Leg {
    Reduction red;
    bool leftward;
  };

  explicit StrongEquivalence(Reduction r, bool leftward = false) {
    legs_.push_back(Leg{std::move(r), leftward});
  }

  const std::vector<Leg>& legs() const { return legs_; }

  ComplexPtr left_end() const {
    const Leg& l = legs_.front();
    return l.leftward ? l.red.bottom : l.red.top;
  }
  ComplexPtr right_end() const {
    const Leg& l = legs_.back();
    return l.leftward ? l.red.top : l.red.bottom;
  }

  StrongEquivalence& append(Reduction r, bool leftward) {
    ComplexPtr incoming = leftward ? r.bottom : r.top;
    if (incoming != right_end())
      throw Error("zig-zag: endpoint mismatch (" + incoming->name() + " vs " +
                  right_end()->name() + ")");
    legs_.push_back(Leg{std::move(r), leftward});
    return *this;
  }

  /// Lazy concatenation; substitute for composing strong equivalences.
  StrongEquivalence& concat(const StrongEquivalence& other) {
    for (const Leg& l : other.legs_) append(l.red, l.leftward);
    return *this;
  }

  /// Transport a cycle along the zig-zag using f on rightward legs travelled
  /// left-to-right (g on leftward ones), and vice versa.  Raises if the
  /// input is not a cycle.
  FormalSum transport(const FormalSum& z, int degree, bool from_left) const {
    ComplexPtr at = from_left ? left_end() : right_end();
    if (!at->boundary(z, degree).is_zero())
      throw Error("zigzag transport: input chain is not a cycle");
    FormalSum cur = z;
    if (from_left) {
      for (const Leg& l : legs_) {
        cur = l.leftward ? l.red.g(cur, degree) : l.red.f(cur, degree);
      }
    } else {
      for (auto it = legs_.rbegin(); it != legs_.rend(); ++it) {
        cur = it->leftward ? it->red.f(cur, degree) : it->red.g(cur, degree);
      }
    }
    return cur;
  }

 private:
  std::vector<Leg> legs_;
};

}  // namespace tcp

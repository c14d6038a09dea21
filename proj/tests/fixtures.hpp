#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcp/reduction.hpp"

namespace tcpfix {

using namespace tcp;

inline ComplexPtr finite_complex(std::string name,
                                 std::vector<std::vector<Gen>> bases,
                                 std::map<Gen, FormalSum, GenLess> diff) {
  auto basis = [bases](int n) -> std::optional<std::vector<Gen>> {
    if (n < static_cast<int>(bases.size()))
      return bases[static_cast<std::size_t>(n)];
    return std::vector<Gen>{};
  };
  GradedMap d(-1, [diff](const Gen& g, int) {
    auto it = diff.find(g);
    return it == diff.end() ? FormalSum() : it->second;
  });
  return make_complex(std::move(name), basis, std::move(d));
}

/// Interval complex p --e--> q collapsed onto one endpoint.  `keep_p` picks
/// which vertex survives.
struct Collapse {
  ComplexPtr top, bottom;
  Reduction red;
};

inline Collapse interval_collapse(const std::string& tag, bool keep_p) {
  Gen p = Gen::atom(tag + ".p"), q = Gen::atom(tag + ".q"),
      e = Gen::atom(tag + ".e");
  std::map<Gen, FormalSum, GenLess> d;
  d.emplace(e, FormalSum(q) - FormalSum(p));  // d0 e = q, d1 e = p
  ComplexPtr top = finite_complex("I(" + tag + ")", {{p, q}, {e}}, d);
  Gen kept = keep_p ? p : q;
  ComplexPtr bottom = finite_complex("pt(" + tag + ")", {{kept}}, {});
  GradedMap f(0, [kept, e](const Gen& g, int) {
    return g == e ? FormalSum() : FormalSum(kept);
  });
  GradedMap g(0, [](const Gen& gen, int) { return FormalSum(gen); });
  // h sends the collapsed vertex across the edge, with the sign fixed by
  // gf - id = dh + hd
  GradedMap h(1, [p, q, e, keep_p](const Gen& gen, int) {
    if (keep_p && gen == q) return FormalSum(e, -1);
    if (!keep_p && gen == p) return FormalSum(e);
    return FormalSum();
  });
  return Collapse{top, bottom, Reduction{top, bottom, f, g, h}};
}

}  // namespace tcpfix

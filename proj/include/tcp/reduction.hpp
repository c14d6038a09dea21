#pragma once

#include <string>
#include <vector>

#include "tcp/chain_complex.hpp"

namespace tcp {

/// Reduction (f, g, h): top => bottom with the five identities
///   fg = id,  gf - id = dh + hd,  fh = 0,  hg = 0,  hh = 0
/// and f, g chain maps.  The bottom complex is a deformation retract of the
/// top complex.
struct Reduction {
  ComplexPtr top;     // C_*
  ComplexPtr bottom;  // D_*
  GradedMap f;        // C -> D, degree 0
  GradedMap g;        // D -> C, degree 0
  GradedMap h;        // C -> C, degree +1
};

inline Reduction trivial_reduction(ComplexPtr c) {
  return Reduction{c, c, GradedMap::identity(), GradedMap::identity(),
                   GradedMap::zero(1)};
}

struct CheckFailure {
  std::string identity;
  std::string where;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckFailure> failures;
  long long checked = 0;

  bool ok() const { return failures.empty(); }

  std::string summary() const {
    if (ok()) return "ok (" + std::to_string(checked) + " checks)";
    std::string s = std::to_string(failures.size()) + " failure(s); first: [" +
                    failures[0].identity + "] at " + failures[0].where;
    if (!failures[0].detail.empty()) s += ": " + failures[0].detail;
    return s;
  }
};

namespace detail {

inline void expect_zero(CheckReport& rep, const FormalSum& v,
                        const std::string& identity, const Gen& g, int n) {
  ++rep.checked;
  if (!v.is_zero())
    rep.failures.push_back(CheckFailure{
        identity, to_string(g) + " (degree " + std::to_string(n) + ")",
        "residual " + to_string(v)});
}

}  // namespace detail

/// Verify the five reduction identities and both chain-map equations on the
/// given generators (`top_samples` / `bottom_samples` are (degree, generator)
/// pairs).  Report-valued: the first counterexample is in the report.
inline CheckReport check_reduction_on(
    const Reduction& r, const std::vector<std::pair<int, Gen>>& top_samples,
    const std::vector<std::pair<int, Gen>>& bottom_samples) {
  CheckReport rep;
  const GradedMap &f = r.f, &g = r.g, &h = r.h;
  const GradedMap& dC = r.top->diff();
  const GradedMap& dD = r.bottom->diff();
  for (const auto& [n, c] : top_samples) {
    FormalSum x(c);
    FormalSum hx = h(x, n), fx = f(x, n);
    // gf - id = dh + hd
    detail::expect_zero(
        rep, g(fx, n) - x - dC(hx, n + 1) - h(dC(x, n), n - 1), "gf-id=dh+hd",
        c, n);
    detail::expect_zero(rep, f(hx, n + 1), "fh=0", c, n);
    detail::expect_zero(rep, h(hx, n + 1), "hh=0", c, n);
    detail::expect_zero(rep, dD(fx, n) - f(dC(x, n), n - 1), "df=fd", c, n);
  }
  for (const auto& [n, c] : bottom_samples) {
    FormalSum x(c);
    FormalSum gx = g(x, n);
    detail::expect_zero(rep, f(gx, n) - x, "fg=id", c, n);
    detail::expect_zero(rep, h(gx, n), "hg=0", c, n);
    detail::expect_zero(rep, dC(gx, n) - g(dD(x, n), n - 1), "dg=gd", c, n);
  }
  return rep;
}

/// Identity check over all FINITE degrees in [lo, hi].
inline CheckReport check_reduction(const Reduction& r, int lo, int hi) {
  std::vector<std::pair<int, Gen>> top, bottom;
  for (int n = lo; n <= hi; ++n) {
    for (const Gen& c : r.top->basis(n)) top.emplace_back(n, c);
    for (const Gen& c : r.bottom->basis(n)) bottom.emplace_back(n, c);
  }
  return check_reduction_on(r, top, bottom);
}

/// r1: C => D, r2: D => E gives C => E with h = h1 + g1 h2 f1.
inline Reduction compose_reductions(const Reduction& r1, const Reduction& r2) {
  if (r1.bottom != r2.top)
    throw Error("compose_reductions: endpoint mismatch (" + r1.bottom->name() +
                " vs " + r2.top->name() + ")");
  return Reduction{r1.top, r2.bottom, compose(r2.f, r1.f),
                   compose(r1.g, r2.g),
                   add(r1.h, compose(r1.g, compose(r2.h, r1.f)))};
}

inline const TensorNode& tensor_of(const Gen& g) {
  const auto* t = std::get_if<TensorNode>(&g.data().node);
  if (!t) throw Error("generator is not a tensor cell: " + to_string(g));
  return *t;
}

/// (a (x) b) with the Koszul sign (-1)^{|b| deg x}.
inline GradedMap tensor_map(const GradedMap& a, const GradedMap& b) {
  const int bs = b.shift();
  const int as = a.shift();
  return GradedMap(as + bs, [a, b, as, bs](const Gen& g, int) {
    const TensorNode& t = tensor_of(g);
    FormalSum ax = a.apply_gen(t.x, t.xdeg);
    FormalSum by = b.apply_gen(t.y, t.ydeg);
    FormalSum out = tensor_chains(ax, t.xdeg + as, by, t.ydeg + bs);
    if ((bs % 2 != 0) && (t.xdeg % 2 != 0)) out = -out;
    return out;
  });
}

/// C (x) D with the Koszul differential d(x(x)y) = dx(x)y + (-1)^|x| x(x)dy.
inline ComplexPtr tensor_complex(ComplexPtr A, ComplexPtr B,
                                 std::string name = "") {
  if (name.empty()) name = A->name() + " (x) " + B->name();
  GradedMap d(-1, [A, B](const Gen& g, int) {
    const TensorNode& t = tensor_of(g);
    FormalSum out = tensor_chains(A->diff().apply_gen(t.x, t.xdeg), t.xdeg - 1,
                                  FormalSum(t.y), t.ydeg);
    FormalSum right = tensor_chains(
        FormalSum(t.x), t.xdeg, B->diff().apply_gen(t.y, t.ydeg), t.ydeg - 1);
    out += (t.xdeg % 2 == 0) ? right : -right;
    return out;
  });
  auto basis = [A, B](int n) -> std::optional<std::vector<Gen>> {
    for (int p = 0; p <= n; ++p)
      if (!A->finite(p) || !B->finite(n - p)) return std::nullopt;
    std::vector<Gen> out;
    for (int p = 0; p <= n; ++p)
      for (const Gen& x : A->basis(p))
        for (const Gen& y : B->basis(n - p))
          out.push_back(Gen::tensor(x, p, y, n - p));
    return out;
  };
  return make_complex(std::move(name), basis, std::move(d));
}

enum class TensorHomotopy { Left, Right };

/// Tensor product of reductions.  The homotopy is
///   Left:  h_C (x) id  +  g_C f_C (x) h_D
///   Right: h_C (x) g_D f_D  +  id (x) h_D
/// The Left variant leaves the second factor untouched in its first summand,
/// which is what the twisted pipeline needs for filtration control.
inline Reduction tensor_reduction(const Reduction& rC, const Reduction& rD,
                                  TensorHomotopy variant,
                                  ComplexPtr top = nullptr,
                                  ComplexPtr bottom = nullptr) {
  if (!top) top = tensor_complex(rC.top, rD.top);
  if (!bottom) bottom = tensor_complex(rC.bottom, rD.bottom);
  GradedMap f = tensor_map(rC.f, rD.f);
  GradedMap g = tensor_map(rC.g, rD.g);
  GradedMap h =
      variant == TensorHomotopy::Left
          ? add(tensor_map(rC.h, GradedMap::identity()),
                tensor_map(compose(rC.g, rC.f), rD.h))
          : add(tensor_map(rC.h, compose(rD.g, rD.f)),
                tensor_map(GradedMap::identity(), rD.h));
  return Reduction{std::move(top), std::move(bottom), std::move(f),
                   std::move(g), std::move(h)};
}

}  // namespace tcp

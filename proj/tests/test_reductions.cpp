#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "tcp/perturbation.hpp"
#include "tcp/zigzag.hpp"

using namespace tcp;
using tcpfix::interval_collapse;

namespace {

std::vector<std::pair<int, Gen>> all_gens(const ChainComplex& C, int lo, int hi) {
  std::vector<std::pair<int, Gen>> out;
  for (int n = lo; n <= hi; ++n)
    for (const Gen& g : C.basis(n)) out.emplace_back(n, g);
  return out;
}

}  // namespace

TEST_CASE("trivial reduction passes the identity suite") {
  auto col = interval_collapse("t", true);
  Reduction r = trivial_reduction(col.top);
  CHECK(check_reduction(r, 0, 2).ok());
}

TEST_CASE("interval collapse is a reduction") {
  for (bool keep_p : {true, false}) {
    auto col = interval_collapse(keep_p ? "p" : "q", keep_p);
    auto rep = check_reduction(col.red, 0, 2);
    INFO(rep.summary());
    CHECK(rep.ok());
  }
}

TEST_CASE("corrupted homotopy is reported with the violated identity") {
  auto col = interval_collapse("c", true);
  Gen q = Gen::atom("c.q"), e = Gen::atom("c.e");
  // wrong sign in h: gf - id = dh + hd must fail
  Reduction wrong_sign = col.red;
  wrong_sign.h = GradedMap(1, [q, e](const Gen& g, int) {
    return g == q ? FormalSum(e) : FormalSum();
  });
  auto rep = check_reduction(wrong_sign, 0, 2);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.failures[0].identity == "gf-id=dh+hd");

  // an h with hh != 0 on a two-step tower
  Gen a = Gen::atom("hh.a"), b = Gen::atom("hh.b"), c = Gen::atom("hh.c");
  ComplexPtr tower = tcpfix::finite_complex("tower", {{a}, {b}, {c}}, {});
  Reduction r = trivial_reduction(tower);
  r.h = GradedMap(1, [a, b, c](const Gen& g, int) {
    if (g == a) return FormalSum(b);
    if (g == b) return FormalSum(c);
    return FormalSum();
  });
  auto rep2 = check_reduction_on(r, {{0, a}}, {});
  REQUIRE_FALSE(rep2.ok());
  bool found_hh = false;
  for (const auto& fail : rep2.failures) found_hh |= fail.identity == "hh=0";
  CHECK(found_hh);
}

TEST_CASE("composition of reductions is a reduction") {
  auto col = interval_collapse("comp", true);

  SECTION("composing with the trivial reduction changes nothing") {
    Reduction t = trivial_reduction(col.bottom);
    Reduction c = compose_reductions(col.red, t);
    for (const auto& [n, g] : all_gens(*col.top, 0, 1)) {
      CHECK(c.f.apply_gen(g, n) == col.red.f.apply_gen(g, n));
      CHECK(c.h.apply_gen(g, n) == col.red.h.apply_gen(g, n));
    }
    for (const Gen& g : col.bottom->basis(0))
      CHECK(c.g.apply_gen(g, 0) == col.red.g.apply_gen(g, 0));
  }

  SECTION("endpoint mismatch raises") {
    auto other = interval_collapse("other", true);
    CHECK_THROWS_AS(compose_reductions(col.red, other.red), Error);
  }

  SECTION("composite homotopy is h1 + g1 h2 f1 termwise") {
    Reduction t = trivial_reduction(col.bottom);
    Reduction c = compose_reductions(col.red, t);
    for (const auto& [n, g] : all_gens(*col.top, 0, 1)) {
      FormalSum expect = col.red.h.apply_gen(g, n) +
                         col.red.g(t.h(col.red.f.apply_gen(g, n), n), n + 1);
      CHECK(c.h.apply_gen(g, n) == expect);
    }
  }
}

TEST_CASE("tensor products of reductions satisfy the identities") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    bool p1 = rng() % 2, p2 = rng() % 2;
    auto c1 = interval_collapse("tA" + std::to_string(trial), p1);
    auto c2 = interval_collapse("tB" + std::to_string(trial), p2);
    for (auto variant : {TensorHomotopy::Left, TensorHomotopy::Right}) {
      Reduction r = tensor_reduction(c1.red, c2.red, variant);
      auto rep = check_reduction(r, 0, 3);
      INFO("variant " << (variant == TensorHomotopy::Left ? "LEFT" : "RIGHT")
                      << ": " << rep.summary());
      CHECK(rep.ok());
    }
  }

  SECTION("both inputs trivial gives the trivial reduction") {
    auto c = interval_collapse("tt", true);
    Reduction t = trivial_reduction(c.top);
    Reduction r = tensor_reduction(t, t, TensorHomotopy::Left);
    CHECK(check_reduction(r, 0, 3).ok());
    for (const auto& [n, g] : all_gens(*r.top, 0, 2)) {
      CHECK(r.f.apply_gen(g, n) == FormalSum(g));
      CHECK(r.h.apply_gen(g, n).is_zero());
    }
  }

  SECTION("left and right variants agree when the first factor is trivial") {
    auto cA = interval_collapse("vA", true);
    auto cB = interval_collapse("vB", false);
    Reduction t = trivial_reduction(cA.top);
    ComplexPtr top = tensor_complex(t.top, cB.red.top);
    ComplexPtr bottom = tensor_complex(t.bottom, cB.red.bottom);
    Reduction left =
        tensor_reduction(t, cB.red, TensorHomotopy::Left, top, bottom);
    Reduction right =
        tensor_reduction(t, cB.red, TensorHomotopy::Right, top, bottom);
    for (const auto& [n, g] : all_gens(*top, 0, 2)) {
      CHECK(left.h.apply_gen(g, n) == right.h.apply_gen(g, n));
      CHECK(left.f.apply_gen(g, n) == right.f.apply_gen(g, n));
    }
  }

  SECTION("tensor differential uses the Koszul sign") {
    auto cA = interval_collapse("kA", true);
    ComplexPtr T = tensor_complex(cA.top, cA.top);
    Gen e = Gen::atom("kA.e"), p = Gen::atom("kA.p"), q = Gen::atom("kA.q");
    Gen ee = Gen::tensor(e, 1, e, 1);
    FormalSum d = T->diff().apply_gen(ee, 2);
    FormalSum expect =
        tensor_chains(FormalSum(q) - FormalSum(p), 0, FormalSum(e), 1) -
        tensor_chains(FormalSum(e), 1, FormalSum(q) - FormalSum(p), 0);
    CHECK(d == expect);
    CHECK(T->diff()(d, 1).is_zero());
  }
}

TEST_CASE("basic perturbation lemma with zero perturbation is the identity") {
  auto col = interval_collapse("bpl0", true);
  GradedMap zero = GradedMap::zero(-1);
  BplOutput out = basic_perturbation_lemma(col.red, zero, 8);
  for (const auto& [n, g] : all_gens(*col.top, 0, 1)) {
    CHECK(out.reduction.f.apply_gen(g, n) == col.red.f.apply_gen(g, n));
    CHECK(out.reduction.h.apply_gen(g, n) == col.red.h.apply_gen(g, n));
  }
  for (const Gen& g : col.bottom->basis(0)) {
    CHECK(out.reduction.g.apply_gen(g, 0) == col.red.g.apply_gen(g, 0));
    CHECK(out.delta_bottom.apply_gen(g, 0).is_zero());
  }
}

TEST_CASE("basic perturbation lemma transfers a genuine perturbation") {
  // Interval collapse with delta(e) = 2p: the series on q runs two terms
  // before truncating, so the lemma is exercised beyond the trivial case.
  auto col = interval_collapse("bp", true);
  Gen p = Gen::atom("bp.p"), q = Gen::atom("bp.q"), e = Gen::atom("bp.e");
  GradedMap delta(-1, [p, e](const Gen& gen, int) {
    return gen == e ? FormalSum(p, 2) : FormalSum();
  });
  REQUIRE(check_perturbation(*col.top, delta, all_gens(*col.top, 0, 1)).ok());
  BplOutput out = basic_perturbation_lemma(col.red, delta, 8);
  auto rep = check_reduction(out.reduction, 0, 2);
  INFO(rep.summary());
  CHECK(rep.ok());
  // f' differs from f exactly by the series term
  CHECK(out.reduction.f.apply_gen(q, 0) == FormalSum(p, -1));
  CHECK(out.delta_bottom.apply_gen(p, 0).is_zero());
  // new top differential is d + delta
  CHECK(out.reduction.top->diff().apply_gen(e, 1) ==
        FormalSum(q) + FormalSum(p));

  SECTION("guard fires when h delta is not nilpotent") {
    auto col = interval_collapse("ng", true);
    Gen e = Gen::atom("ng.e"), q = Gen::atom("ng.q");
    (void)e;
    GradedMap bad(-1, [e, q](const Gen& gen, int) {
      return gen == e ? FormalSum(q) : FormalSum();
    });
    CHECK(check_perturbation(*col.top, bad, all_gens(*col.top, 0, 1)).ok());
    // (h delta)(e) = -e never vanishes, so h'(q) = series(h(q)) diverges
    CHECK_THROWS_AS(
        basic_perturbation_lemma(col.red, bad, 8).reduction.h(FormalSum(q), 0),
        NilpotencyGuardExceeded);
  }
}

TEST_CASE("easy perturbation lemma pulls the perturbation back as g d' f") {
  auto col = interval_collapse("epl", true);

  SECTION("zero bottom perturbation changes nothing") {
    Reduction r = easy_perturbation_lemma(col.red, GradedMap::zero(-1));
    CHECK(check_reduction(r, 0, 2).ok());
    for (const auto& [n, g] : all_gens(*col.top, 0, 1))
      CHECK(r.top->diff().apply_gen(g, n) == col.top->diff().apply_gen(g, n));
  }

  SECTION("through the trivial reduction the top perturbation is delta'") {
    Gen u = Gen::atom("ep.u"), w = Gen::atom("ep.w");
    ComplexPtr C = tcpfix::finite_complex("C", {{u}, {w}}, {});
    Reduction t = trivial_reduction(C);
    GradedMap dp(-1, [u, w](const Gen& g, int) {
      return g == w ? FormalSum(u, 5) : FormalSum();
    });
    Reduction r = easy_perturbation_lemma(t, dp);
    CHECK(r.top->diff().apply_gen(w, 1) == FormalSum(u, 5));
    CHECK(check_reduction(r, 0, 2).ok());
  }
}

TEST_CASE("zig-zag transport") {
  auto col = interval_collapse("zz", true);
  Gen p = Gen::atom("zz.p"), e = Gen::atom("zz.e");

  SECTION("length-1 zig-zag transports bottom generators through g") {
    StrongEquivalence eq(col.red, /*leftward=*/false);
    CHECK(eq.left_end() == col.top);
    CHECK(eq.right_end() == col.bottom);
    FormalSum z(p);
    CHECK(eq.transport(z, 0, /*from_left=*/false) == col.red.g.apply_gen(p, 0));
  }

  SECTION("transport of zero is zero") {
    StrongEquivalence eq(col.red);
    CHECK(eq.transport(FormalSum(), 1, false).is_zero());
  }

  SECTION("non-cycles are rejected") {
    StrongEquivalence eq(col.red);
    CHECK_THROWS_AS(eq.transport(FormalSum(e), 1, true), Error);
  }

  SECTION("zig-zag concatenation transports across both legs") {
    StrongEquivalence eq(trivial_reduction(col.top), /*leftward=*/true);
    eq.append(col.red, false);
    CHECK(eq.left_end() == col.top);
    CHECK(eq.right_end() == col.bottom);
    FormalSum img = eq.transport(FormalSum(p), 0, true);
    CHECK(img == FormalSum(p));
    auto other = interval_collapse("zz2", true);
    CHECK_THROWS_AS(eq.append(other.red, false), Error);
  }
}

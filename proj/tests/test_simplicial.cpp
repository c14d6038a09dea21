#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "tcp/homology.hpp"
#include "tcp/simplicial.hpp"
#include "tcp/spaces.hpp"

using namespace tcp;

namespace {

// all simplicial identities that involve faces/degeneracies of s
void check_identities_at(const SimplicialSet& X, const Simplex& s) {
  const int n = s.dim();
  // d_i d_j = d_{j-1} d_i for i < j
  if (n >= 2)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        CHECK(X.face(i, X.face(j, s)) == X.face(j - 1, X.face(i, s)));
  // d_i s_j relations
  for (int j = 0; j <= n; ++j) {
    Simplex sj = apply_degeneracy(j, s);
    for (int i = 0; i <= n + 1; ++i) {
      Simplex lhs = X.face(i, sj);
      if (i < j)
        CHECK(lhs == apply_degeneracy(j - 1, X.face(i, s)));
      else if (i == j || i == j + 1)
        CHECK(lhs == s);
      else if (n >= 1)
        CHECK(lhs == apply_degeneracy(j, X.face(i - 1, s)));
    }
  }
  // s_i s_j = s_{j+1} s_i for i <= j
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= j; ++i)
      CHECK(apply_degeneracy(i, apply_degeneracy(j, s)) ==
            apply_degeneracy(j + 1, apply_degeneracy(i, s)));
}

void check_identities_finite(const SimplicialSet& X, int maxdim) {
  for (int n = 0; n <= maxdim; ++n) {
    auto cells = X.nondegenerate(n);
    REQUIRE(cells);
    for (const Gen& g : *cells) check_identities_at(X, X.from_core(g, n));
  }
}

std::vector<long long> random_tuple(std::mt19937_64& rng, int dim, int bound,
                                    bool allow_zero) {
  std::uniform_int_distribution<long long> e(-bound, bound);
  std::vector<long long> t(static_cast<std::size_t>(dim));
  for (auto& v : t) {
    do {
      v = e(rng);
    } while (!allow_zero && v == 0);
  }
  return t;
}

}  // namespace

TEST_CASE("canonical degeneracy rewriting") {
  Gen x = Gen::atom("x");
  Simplex core({}, x, 0);
  // s0 s0 x = s1 s0 x
  Simplex s = canonical_degeneracy({0, 0}, core);
  CHECK(s.degs == std::vector<int>{1, 0});
  // empty op list
  CHECK(canonical_degeneracy({}, core) == core);
  // s2 s0 already canonical
  Simplex c2({}, Gen::atom("y"), 1);
  Simplex t = canonical_degeneracy({2, 0}, c2);
  CHECK(t.degs == std::vector<int>{2, 0});
  // uniqueness: both rewriting routes agree (s0 s1 = s2 s0 on a 1-simplex)
  CHECK(canonical_degeneracy({0, 1}, c2) == canonical_degeneracy({2, 0}, c2));
}

TEST_CASE("faces push through degeneracies") {
  SpacePtr S1 = sphere(1);
  Gen v = Gen::atom("*");
  Simplex s0v = apply_degeneracy(0, S1->from_core(v, 0));
  CHECK(S1->face(0, s0v) == S1->from_core(v, 0));
  CHECK(S1->face(1, s0v) == S1->from_core(v, 0));
  CHECK_THROWS_AS(S1->face(2, s0v), Error);
}

TEST_CASE("K(Z,1) faces follow the bar formulas") {
  GroupPtr G = kz1();
  SpacePtr X = G->space;
  Simplex s34 = kz1_simplex({3, 4});
  CHECK(X->face(1, s34) == kz1_simplex({7}));
  CHECK(X->face(0, s34) == kz1_simplex({4}));
  CHECK(X->face(2, s34) == kz1_simplex({3}));
  // merged entries can vanish: d_1 [3|-3] = s_0 []
  Simplex cancel = X->face(1, kz1_simplex({3, -3}));
  CHECK(cancel.degenerate());
  CHECK(cancel == apply_degeneracy(0, kz1_simplex({})));

  SECTION("degeneracies insert zeros; nondegenerate iff no zero entry") {
    Simplex s = kz1_simplex({2, 0, 5});
    CHECK(s.degenerate());
    CHECK(kz1_tuple(s) == std::vector<long long>{2, 0, 5});
    CHECK(kz1_simplex({1, 2, 3}).degenerate() == false);
    // round trip on doubly degenerate tuples
    Simplex d = kz1_simplex({0, 7, 0});
    CHECK(kz1_tuple(d) == std::vector<long long>{0, 7, 0});
  }
}

TEST_CASE("tilde_d iterates the last face") {
  GroupPtr G = kz1();
  SpacePtr X = G->space;
  Simplex s = kz1_simplex({2, 5});
  CHECK(X->tilde_d(s, 0) == s);
  CHECK(X->tilde_d(s, 1) == kz1_simplex({2}));
  CHECK(X->tilde_d(s, 2) == kz1_simplex({}));
  SpacePtr c2 = circle2();
  Simplex a = c2->from_core(Gen::atom("a"), 1);
  CHECK(c2->tilde_d(a, 1) == c2->from_core(Gen::atom("v0"), 0));
}

TEST_CASE("simplicial identities hold on builtin spaces") {
  check_identities_finite(*point_space(), 3);
  check_identities_finite(*sphere(1), 4);
  check_identities_finite(*sphere(2), 4);
  check_identities_finite(*sphere(3), 4);
  check_identities_finite(*circle2(), 4);
  check_identities_finite(*kzm0(2)->space, 4);
  check_identities_finite(*kzm0(3)->space, 3);
}

TEST_CASE("simplicial identities hold on sampled K(Z,1) simplices") {
  GroupPtr G = kz1();
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int dim = 1 + static_cast<int>(rng() % 5);
    Simplex s = kz1_simplex(random_tuple(rng, dim, 9, true));
    check_identities_at(*G->space, s);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("products enumerate disjoint degeneracy patterns") {
  SpacePtr S1 = sphere(1);
  SpacePtr T = product(S1, S1);
  CHECK(T->nondegenerate(0)->size() == 1);
  CHECK(T->nondegenerate(1)->size() == 3);  // (e,e), (e,s0v), (s0v,e)
  CHECK(T->nondegenerate(2)->size() == 2);  // the two shuffles of (e,e)
  CHECK(T->nondegenerate(3)->size() == 0);
  check_identities_finite(*T, 3);

  SECTION("chain complex of the torus has the right homology") {
    ComplexPtr C = normalized_chains(T);
    CHECK(homology_group(*C, 0) == HomologyGroup{1, {}});
    CHECK(homology_group(*C, 1) == HomologyGroup{2, {}});
    CHECK(homology_group(*C, 2) == HomologyGroup{1, {}});
  }

  SECTION("product with a point is the space itself") {
    SpacePtr P = product(S1, point_space());
    for (int n = 0; n <= 3; ++n)
      CHECK(P->nondegenerate(n)->size() == S1->nondegenerate(n)->size());
  }

  SECTION("product with an OPEN factor is OPEN") {
    SpacePtr P = product(S1, kz1()->space);
    CHECK_FALSE(P->nondegenerate(1).has_value());
    CHECK(P->nondegenerate(0).has_value());
  }
}

TEST_CASE("normalized chains differential") {
  SECTION("minimal S^2 has zero differential") {
    ComplexPtr C = normalized_chains(sphere(2));
    CHECK(C->basis(0).size() == 1);
    CHECK(C->basis(1).empty());
    CHECK(C->basis(2).size() == 1);
    CHECK(C->diff().apply_gen(Gen::atom("sigma2"), 2).is_zero());
  }
  SECTION("boundary of circle2 edges") {
    ComplexPtr C = normalized_chains(circle2());
    FormalSum da = C->diff().apply_gen(Gen::atom("a"), 1);
    CHECK(da == FormalSum(Gen::atom("v1")) - FormalSum(Gen::atom("v0")));
    // augmentation of a boundary vanishes
    CHECK(augmentation(da) == 0);
  }
  SECTION("dd = 0 on sampled K(Z,1) chains up to dimension 5") {
    GroupPtr G = kz1();
    ComplexPtr C = normalized_chains(G->space);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      int dim = 2 + static_cast<int>(rng() % 4);
      Simplex s = kz1_simplex(random_tuple(rng, dim, 9, false));
      REQUIRE_FALSE(s.degenerate());
      FormalSum d = C->diff().apply_gen(s.core, dim);
      CHECK(C->diff()(d, dim - 1).is_zero());
    }
  }
  SECTION("dd = 0 on every torus generator") {
    ComplexPtr C = normalized_chains(product(sphere(1), sphere(1)));
    for (int n = 1; n <= 3; ++n)
      for (const Gen& g : C->basis(n))
        CHECK(C->diff()(C->diff().apply_gen(g, n), n - 1).is_zero());
  }
}

TEST_CASE("diagonal chain map") {
  SpacePtr S1 = sphere(1);
  GradedMap D = diagonal_chain(S1);
  Gen v = Gen::atom("*"), e = Gen::atom("sigma1");
  FormalSum dv = D.apply_gen(v, 0);
  REQUIRE(dv.term_count() == 1);
  CHECK(to_string(dv.terms()[0].first) == "(*, *)");
  FormalSum de = D.apply_gen(e, 1);
  REQUIRE(de.term_count() == 1);

  // chain map property against the product complex
  SpacePtr P = product(S1, S1);
  ComplexPtr CP = normalized_chains(P);
  ComplexPtr C1 = normalized_chains(S1);
  CHECK(CP->diff()(D(FormalSum(e), 1), 1) == D(C1->diff()(FormalSum(e), 1), 0));
}

TEST_CASE("simplicial groups satisfy the group laws") {
  SECTION("K(Z/2,0) multiplication table") {
    GroupPtr G = kzm0(2);
    Simplex z = residue_simplex(0, 0), o = residue_simplex(1, 0);
    CHECK(G->mul(0, z, o) == o);
    CHECK(G->mul(0, o, o) == z);
    CHECK(G->inv(0, o) == o);
    CHECK(G->unit(0) == z);
    // faces and degeneracies are group homomorphisms (degree 1 sample)
    Simplex o1 = residue_simplex(1, 1), z1 = residue_simplex(0, 1);
    CHECK(G->mul(1, o1, o1) == z1);
    CHECK(G->space->face(0, G->mul(1, o1, o1)) ==
          G->mul(0, G->space->face(0, o1), G->space->face(0, o1)));
  }
  SECTION("K(Z,1) is a group under entrywise addition") {
    GroupPtr G = kz1();
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      int dim = 1 + static_cast<int>(rng() % 4);
      Simplex u = kz1_simplex(random_tuple(rng, dim, 9, true));
      Simplex v = kz1_simplex(random_tuple(rng, dim, 9, true));
      Simplex uv = G->mul(dim, u, v);
      CHECK(G->mul(dim, uv, G->inv(dim, v)) == u);
      CHECK(G->mul(dim, u, G->unit(dim)) == u);
      // face maps are homomorphisms
      for (int i = 0; i <= dim; ++i)
        CHECK(G->space->face(i, uv) ==
              G->mul(dim - 1, G->space->face(i, u), G->space->face(i, v)));
      // degeneracies too
      for (int i = 0; i <= dim; ++i)
        CHECK(apply_degeneracy(i, uv) ==
              G->mul(dim + 1, apply_degeneracy(i, u), apply_degeneracy(i, v)));
    }
  }
}

TEST_CASE("group actions respect faces and degeneracies") {
  SECTION("flip action of K(Z/2,0) on circle2") {
    SpacePtr F = circle2();
    GroupPtr G = kzm0(2);
    GroupAction act = flip_action();
    Simplex a = F->from_core(Gen::atom("a"), 1);
    Simplex one = residue_simplex(1, 1);
    Simplex b = act.act(1, a, one);
    CHECK(b == F->from_core(Gen::atom("b"), 1));
    // right action laws
    CHECK(act.act(1, a, G->unit(1)) == a);
    CHECK(act.act(1, act.act(1, a, one), one) == a);
    // compatibility with faces
    for (int i = 0; i <= 1; ++i)
      CHECK(F->face(i, act.act(1, a, one)) ==
            act.act(0, F->face(i, a), G->space->face(i, one)));
  }
  SECTION("principal action is right multiplication") {
    GroupPtr G = kz1();
    GroupAction act = principal_action(G);
    Simplex u = kz1_simplex({2}), v = kz1_simplex({-1});
    CHECK(act.act(1, u, v) == kz1_simplex({1}));
  }
}

TEST_CASE("sphere builtins") {
  CHECK(sphere(2)->nondegenerate(0)->size() == 1);
  CHECK(sphere(2)->nondegenerate(2)->size() == 1);
  CHECK(sphere(2)->nondegenerate(1)->empty());
  // all faces of the top cell are degenerate for n >= 2
  SpacePtr S2 = sphere(2);
  Simplex c = S2->from_core(Gen::atom("sigma2"), 2);
  for (int i = 0; i <= 2; ++i) CHECK(S2->face(i, c).degenerate());
}

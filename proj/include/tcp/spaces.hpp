#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcp/simplicial.hpp"

namespace tcp {

inline SpacePtr point_space() {
  return std::make_shared<SimplicialSet>(
      "pt",
      [](int, int, const Gen&) -> Simplex {
        throw Error("pt has no positive-dimensional cores");
      },
      [](int n) -> std::optional<std::vector<Gen>> {
        if (n == 0) return std::vector<Gen>{Gen::atom("pt")};
        return std::vector<Gen>{};
      });
}

/// Minimal sphere model: a base point and a single n-cell, every face of
/// which is the (n-1)-fold degenerate base point.
inline SpacePtr sphere(int n) {
  if (n < 1) throw Error("sphere(n) needs n >= 1");
  Gen base = Gen::atom("*");
  Gen cell = Gen::atom("sigma" + std::to_string(n));
  auto face = [base, n](int dim, int i, const Gen&) -> Simplex {
    (void)i;
    if (dim != n) throw Error("sphere: unexpected core dimension");
    std::vector<int> degs;
    for (int j = n - 2; j >= 0; --j) degs.push_back(j);
    return Simplex(std::move(degs), base, 0);
  };
  auto basis = [base, cell, n](int d) -> std::optional<std::vector<Gen>> {
    if (d == 0) return std::vector<Gen>{base};
    if (d == n) return std::vector<Gen>{cell};
    return std::vector<Gen>{};
  };
  return std::make_shared<SimplicialSet>("S^" + std::to_string(n), face, basis);
}

/// Circle with two vertices and two edges; carries the free flip action.
/// Edge a runs v0 -> v1 (d1 a = v0, d0 a = v1), edge b runs v1 -> v0.
inline SpacePtr circle2() {
  Gen v0 = Gen::atom("v0"), v1 = Gen::atom("v1");
  Gen a = Gen::atom("a"), b = Gen::atom("b");
  auto face = [v0, v1, a, b](int dim, int i, const Gen& core) -> Simplex {
    if (dim != 1) throw Error("circle2: unexpected core dimension");
    if (core == a) return Simplex({}, i == 0 ? v1 : v0, 0);
    if (core == b) return Simplex({}, i == 0 ? v0 : v1, 0);
    throw Error("circle2: unknown edge");
  };
  auto basis = [v0, v1, a, b](int d) -> std::optional<std::vector<Gen>> {
    if (d == 0) return std::vector<Gen>{v0, v1};
    if (d == 1) return std::vector<Gen>{a, b};
    return std::vector<Gen>{};
  };
  return std::make_shared<SimplicialSet>("circle2", face, basis);
}

/// Circle with four vertices q0..q3 and edges qa: q0->q1, qb: q0->q3,
/// qc: q1->q2, qd: q3->q2.  The reflection through the q0-q2 axis
/// (q1 <-> q3, qa <-> qb, qc <-> qd) is simplicial and orientation-reversing,
/// which is what a Klein-bottle twist needs.
inline SpacePtr circle4() {
  auto q = [](int i) { return Gen::atom("q" + std::to_string(i)); };
  Gen qa = Gen::atom("qa"), qb = Gen::atom("qb"), qc = Gen::atom("qc"),
      qd = Gen::atom("qd");
  auto face = [q, qa, qb, qc, qd](int dim, int i, const Gen& core) -> Simplex {
    if (dim != 1) throw Error("circle4: unexpected core dimension");
    Gen v;
    if (core == qa) v = i == 0 ? q(1) : q(0);
    else if (core == qb) v = i == 0 ? q(3) : q(0);
    else if (core == qc) v = i == 0 ? q(2) : q(1);
    else if (core == qd) v = i == 0 ? q(2) : q(3);
    else throw Error("circle4: unknown edge");
    return Simplex({}, v, 0);
  };
  auto basis = [q, qa, qb, qc, qd](int d) -> std::optional<std::vector<Gen>> {
    if (d == 0) return std::vector<Gen>{q(0), q(1), q(2), q(3)};
    if (d == 1) return std::vector<Gen>{qa, qb, qc, qd};
    return std::vector<Gen>{};
  };
  return std::make_shared<SimplicialSet>("circle4", face, basis);
}

// ---------------------------------------------------------------------------
// K(Z/m, 0): the discrete simplicial group on Z/m.  Nondegenerate simplices
// live in degree 0 only; a degree-n element is the full degeneracy stack over
// a residue, so elements of every degree are identified with residues.

inline Gen residue_gen(long long r) { return Gen::tuple({r}); }

inline long long residue_of(const Simplex& s) {
  const auto* t = std::get_if<TupleNode>(&s.core.data().node);
  if (!t || t->entries.size() != 1)
    throw Error("not a K(Z/m,0) element: " + to_string(s));
  return t->entries[0];
}

inline Simplex residue_simplex(long long r, int dim) {
  std::vector<int> degs;
  for (int j = dim - 1; j >= 0; --j) degs.push_back(j);
  return Simplex(std::move(degs), residue_gen(r), 0);
}

inline GroupPtr kzm0(int m) {
  if (m < 1) throw Error("kzm0(m) needs m >= 1");
  auto space = std::make_shared<SimplicialSet>(
      "K(Z/" + std::to_string(m) + ",0)",
      [](int, int, const Gen&) -> Simplex {
        throw Error("K(Z/m,0) has no positive-dimensional cores");
      },
      [m](int n) -> std::optional<std::vector<Gen>> {
        std::vector<Gen> out;
        if (n == 0)
          for (long long r = 0; r < m; ++r) out.push_back(residue_gen(r));
        return out;
      });
  auto g = std::make_shared<SimplicialGroup>();
  g->space = space;
  g->mul = [m](int n, const Simplex& u, const Simplex& v) {
    return residue_simplex((residue_of(u) + residue_of(v)) % m, n);
  };
  g->inv = [m](int n, const Simplex& u) {
    return residue_simplex((m - residue_of(u) % m) % m, n);
  };
  g->unit = [](int n) { return residue_simplex(0, n); };
  return g;
}

// ---------------------------------------------------------------------------
// K(Z,1): the standard bar model.  An n-simplex is an integer tuple
// [a1|...|an]; s_i inserts a zero after the i-th entry, so a simplex is
// degenerate exactly when some entry vanishes.

inline Simplex kz1_simplex(std::vector<long long> t) {
  std::vector<int> degs;
  for (;;) {
    int last_zero = -1;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] == 0) last_zero = static_cast<int>(i);
    if (last_zero < 0) break;
    degs.push_back(last_zero);
    t.erase(t.begin() + last_zero);
  }
  int cd = static_cast<int>(t.size());
  return Simplex(std::move(degs), Gen::tuple(std::move(t)), cd);
}

inline std::vector<long long> kz1_tuple(const Simplex& s) {
  const auto* tn = std::get_if<TupleNode>(&s.core.data().node);
  if (!tn) throw Error("not a K(Z,1) simplex: " + to_string(s));
  std::vector<long long> t = tn->entries;
  for (auto it = s.degs.rbegin(); it != s.degs.rend(); ++it)
    t.insert(t.begin() + *it, 0);
  return t;
}

inline const std::vector<long long>& kz1_entries(const Gen& g) {
  const auto* tn = std::get_if<TupleNode>(&g.data().node);
  if (!tn) throw Error("not a K(Z,1) generator: " + to_string(g));
  return tn->entries;
}

inline GroupPtr kz1() {
  auto space = std::make_shared<SimplicialSet>(
      "K(Z,1)",
      [](int dim, int i, const Gen& core) -> Simplex {
        const auto& a = kz1_entries(core);
        std::vector<long long> t;
        t.reserve(a.size() - 1);
        if (i == 0) {
          t.assign(a.begin() + 1, a.end());
        } else if (i == dim) {
          t.assign(a.begin(), a.end() - 1);
        } else {
          t.assign(a.begin(), a.end());
          t[static_cast<std::size_t>(i) - 1] += t[static_cast<std::size_t>(i)];
          t.erase(t.begin() + i);
        }
        return kz1_simplex(std::move(t));
      },
      [](int n) -> std::optional<std::vector<Gen>> {
        if (n == 0) return std::vector<Gen>{Gen::tuple({})};
        return std::nullopt;  // infinitely many nondegenerate simplices
      });
  auto g = std::make_shared<SimplicialGroup>();
  g->space = space;
  g->mul = [](int, const Simplex& u, const Simplex& v) {
    std::vector<long long> a = kz1_tuple(u), b = kz1_tuple(v);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return kz1_simplex(std::move(a));
  };
  g->inv = [](int, const Simplex& u) {
    std::vector<long long> a = kz1_tuple(u);
    for (auto& e : a) e = -e;
    return kz1_simplex(std::move(a));
  };
  g->unit = [](int n) {
    return kz1_simplex(std::vector<long long>(static_cast<std::size_t>(n), 0));
  };
  return g;
}

// ---------------------------------------------------------------------------
// Finite simplicial sets from explicit face tables (file-loaded spaces and
// small test complexes).

inline SpacePtr table_space(std::string name,
                            std::vector<std::vector<Gen>> cells,
                            std::map<Gen, std::vector<Simplex>, GenLess> faces) {
  auto face = [faces, name](int dim, int i, const Gen& core) -> Simplex {
    auto it = faces.find(core);
    if (it == faces.end() || static_cast<int>(it->second.size()) != dim + 1)
      throw ValidationError(name + ": face list missing for " +
                            to_string(core) + " at index " + std::to_string(i));
    return it->second[static_cast<std::size_t>(i)];
  };
  auto basis = [cells](int n) -> std::optional<std::vector<Gen>> {
    if (n < static_cast<int>(cells.size()))
      return cells[static_cast<std::size_t>(n)];
    return std::vector<Gen>{};
  };
  return std::make_shared<SimplicialSet>(std::move(name), face, basis);
}

/// The standard n-simplex for n <= 2, with vertex ids "0", "1", ... and
/// cells named by their vertex strings.
inline SpacePtr standard_simplex(int n) {
  if (n < 0 || n > 2) throw Error("standard_simplex supports n <= 2");
  auto v = [](int i) { return Gen::atom(std::to_string(i)); };
  auto e = [](int i, int j) {
    return Gen::atom(std::to_string(i) + std::to_string(j));
  };
  std::vector<std::vector<Gen>> cells;
  std::map<Gen, std::vector<Simplex>, GenLess> faces;
  if (n == 0) {
    cells = {{v(0)}};
  } else if (n == 1) {
    cells = {{v(0), v(1)}, {e(0, 1)}};
    faces.emplace(e(0, 1),
                  std::vector<Simplex>{{{}, v(1), 0}, {{}, v(0), 0}});
  } else {
    cells = {{v(0), v(1), v(2)}, {e(0, 1), e(0, 2), e(1, 2)},
             {Gen::atom("012")}};
    auto edge = [&](int i, int j) {
      faces.emplace(e(i, j),
                    std::vector<Simplex>{{{}, v(j), 0}, {{}, v(i), 0}});
    };
    edge(0, 1);
    edge(0, 2);
    edge(1, 2);
    faces.emplace(Gen::atom("012"),
                  std::vector<Simplex>{{{}, e(1, 2), 1},
                                       {{}, e(0, 2), 1},
                                       {{}, e(0, 1), 1}});
  }
  return table_space("D" + std::to_string(n), std::move(cells),
                     std::move(faces));
}

// ---------------------------------------------------------------------------
// Actions

inline GroupAction trivial_action() {
  return GroupAction{"trivial",
                     [](int, const Simplex& y, const Simplex&) { return y; }};
}

inline GroupAction principal_action(GroupPtr G) {
  return GroupAction{"principal", [G](int n, const Simplex& y, const Simplex& g) {
                       return G->mul(n, y, g);
                     }};
}

/// Z/2 reflection on circle4: the nontrivial residue fixes q0, q2 and swaps
/// q1<->q3, qa<->qb, qc<->qd.  Orientation-reversing on the circle.
inline GroupAction reflection_action() {
  return GroupAction{"reflection", [](int, const Simplex& y, const Simplex& g) {
                       if (residue_of(g) % 2 == 0) return y;
                       static const std::map<std::string, std::string> swap_to{
                           {"q1", "q3"}, {"q3", "q1"}, {"qa", "qb"},
                           {"qb", "qa"}, {"qc", "qd"}, {"qd", "qc"}};
                       const auto* a = std::get_if<AtomNode>(&y.core.data().node);
                       if (!a) throw Error("reflection: not a circle4 simplex");
                       auto it = swap_to.find(a->name);
                       Gen f = it == swap_to.end() ? y.core : Gen::atom(it->second);
                       return Simplex(y.degs, f, y.core_dim);
                     }};
}

/// Z/2 flip on circle2: the nontrivial residue swaps v0<->v1 and a<->b.
/// This is the antipodal rotation (orientation-preserving).
inline GroupAction flip_action() {
  Gen v0 = Gen::atom("v0"), v1 = Gen::atom("v1");
  Gen a = Gen::atom("a"), b = Gen::atom("b");
  return GroupAction{
      "flip", [v0, v1, a, b](int, const Simplex& y, const Simplex& g) {
        if (residue_of(g) % 2 == 0) return y;
        Gen c = y.core;
        Gen f = c == v0 ? v1 : c == v1 ? v0 : c == a ? b : c == b ? a : c;
        return Simplex(y.degs, f, y.core_dim);
      }};
}

}  // namespace tcp

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tcp/chain_complex.hpp"
#include "tcp/formal_sum.hpp"

namespace tcp {

/// s_k applied on the outside of a canonical simplex; rewrites with
/// s_k s_j = s_{j+1} s_k (k <= j) to keep the index list strictly decreasing.
inline Simplex apply_degeneracy(int k, Simplex s) {
  if (k < 0 || k > s.dim()) throw Error("degeneracy index out of range");
  auto& d = s.degs;
  std::size_t pos = 0;
  while (pos < d.size() && k <= d[pos]) {
    ++d[pos];
    ++pos;
  }
  d.insert(d.begin() + static_cast<std::ptrdiff_t>(pos), k);
  return s;
}

/// Composition of degeneracies written outermost-first, normalized.
inline Simplex canonical_degeneracy(const std::vector<int>& ops, Simplex core) {
  Simplex s = std::move(core);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    s = apply_degeneracy(*it, std::move(s));
  return s;
}

/// Simplicial set given by a face rule on nondegenerate simplices and a
/// per-dimension enumerator (FINITE list or OPEN).  Faces of degenerate
/// simplices are resolved through the simplicial identities.
class SimplicialSet {
 public:
  // face of a nondegenerate core: (core dimension, i, core) -> canonical simplex
  using FaceRule = std::function<Simplex(int, int, const Gen&)>;
  using BasisRule = std::function<std::optional<std::vector<Gen>>(int)>;

  SimplicialSet(std::string name, FaceRule face, BasisRule basis)
      : name_(std::move(name)), face_(std::move(face)), basis_(std::move(basis)) {}

  const std::string& name() const { return name_; }

  // The returned reference stays valid for the space's lifetime.
  const std::optional<std::vector<Gen>>& nondegenerate(int dim) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(dim);
    if (it != memo_.end()) return it->second;
    std::optional<std::vector<Gen>> b;
    if (dim < 0)
      b = std::vector<Gen>{};
    else
      b = basis_(dim);
    return memo_.emplace(dim, std::move(b)).first->second;
  }

  Simplex from_core(const Gen& g, int dim) const { return Simplex({}, g, dim); }

  Simplex face(int i, const Simplex& s) const {
    if (i < 0 || i > s.dim() || s.dim() == 0)
      throw Error(name_ + ": face index " + std::to_string(i) +
                  " out of range for dimension " + std::to_string(s.dim()));
    return face_rec(i, s);
  }

  /// Last-face iterate: k applications of the top face operator.
  Simplex tilde_d(const Simplex& s, int k) const {
    if (k < 0 || k > s.dim()) throw Error("tilde_d: iterate out of range");
    Simplex r = s;
    for (int t = 0; t < k; ++t) r = face(r.dim(), r);
    return r;
  }

 private:
  Simplex face_rec(int i, const Simplex& s) const {
    if (s.degs.empty()) return face_(s.core_dim, i, s.core);
    int j = s.degs.front();
    Simplex rest(std::vector<int>(s.degs.begin() + 1, s.degs.end()), s.core,
                 s.core_dim);
    if (i == j || i == j + 1) return rest;
    if (i < j) return apply_degeneracy(j - 1, face_rec(i, rest));
    return apply_degeneracy(j, face_rec(i - 1, rest));
  }

  std::string name_;
  FaceRule face_;
  BasisRule basis_;
  mutable std::mutex mu_;
  mutable std::map<int, std::optional<std::vector<Gen>>> memo_;
};

using SpacePtr = std::shared_ptr<const SimplicialSet>;

/// Simplicial group: underlying space plus degreewise group structure.
/// All three rules accept canonical simplices of the stated dimension.
struct SimplicialGroup {
  SpacePtr space;
  std::function<Simplex(int, const Simplex&, const Simplex&)> mul;
  std::function<Simplex(int, const Simplex&)> inv;
  std::function<Simplex(int)> unit;
};

using GroupPtr = std::shared_ptr<const SimplicialGroup>;

/// Right action of a simplicial group on a space, degreewise.
struct GroupAction {
  std::string name;
  std::function<Simplex(int, const Simplex&, const Simplex&)> act;
};

/// Canonical form of a pair: common degeneracies are pulled out so the
/// remaining components share none (the Eilenberg-Zilber core of a product
/// simplex).  Both inputs must have equal dimension.
inline Simplex make_product_simplex(Simplex x, Simplex y) {
  if (x.dim() != y.dim())
    throw Error("product simplex: dimension mismatch " +
                std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
  std::vector<int> outer;
  auto pull_out = [](Simplex& s, int i) {
    auto it = std::find(s.degs.begin(), s.degs.end(), i);
    s.degs.erase(it);
    for (int& j : s.degs)
      if (j > i) --j;
  };
  for (;;) {
    int common = -1;
    for (int jx : x.degs)
      if (std::find(y.degs.begin(), y.degs.end(), jx) != y.degs.end())
        common = std::max(common, jx);
    if (common < 0) break;
    pull_out(x, common);
    pull_out(y, common);
    outer.push_back(common);
  }
  int cdim = x.dim();
  return Simplex(std::move(outer), Gen::cell_pair(std::move(x), std::move(y)),
                 cdim);
}

inline const PairNode& pair_of(const Gen& g) {
  const auto* p = std::get_if<PairNode>(&g.data().node);
  if (!p) throw Error("generator is not a product cell: " + to_string(g));
  return *p;
}

namespace detail {

// all k-subsets of {0..n-1} avoiding `used`, ascending inside each subset
inline void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                        const std::vector<bool>& used,
                        std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v < n; ++v) {
    if (used[v]) continue;
    cur.push_back(v);
    subsets_rec(n, k, v + 1, cur, used, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> subsets(int n, int k,
                                             const std::vector<bool>& used) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets_rec(n, k, 0, cur, used, out);
  return out;
}

}  // namespace detail

/// Cartesian product with componentwise structure.  A pair is nondegenerate
/// iff its components share no degeneracy index, so the degree-n cells are
/// pairs of degeneracy patterns with disjoint index sets.
inline SpacePtr product(SpacePtr X, SpacePtr Y, std::string name = "") {
  if (name.empty()) name = X->name() + " x " + Y->name();
  auto face = [X, Y](int dim, int i, const Gen& core) {
    const PairNode& p = pair_of(core);
    (void)dim;
    return make_product_simplex(X->face(i, p.x), Y->face(i, p.y));
  };
  auto basis = [X, Y](int n) -> std::optional<std::vector<Gen>> {
    // need every lower dimension of both factors
    for (int d = 0; d <= n; ++d)
      if (!X->nondegenerate(d) || !Y->nondegenerate(d)) return std::nullopt;
    std::vector<Gen> cells;
    for (int p = 0; p <= n; ++p) {
      auto xs = *X->nondegenerate(p);
      if (xs.empty()) continue;
      std::vector<bool> nothing(static_cast<std::size_t>(n), false);
      auto apatterns = detail::subsets(n, n - p, nothing);
      for (int q = 0; q <= n; ++q) {
        auto ys = *Y->nondegenerate(q);
        if (ys.empty()) continue;
        for (const auto& A : apatterns) {
          std::vector<bool> used(static_cast<std::size_t>(n), false);
          for (int a : A) used[static_cast<std::size_t>(a)] = true;
          for (const auto& B : detail::subsets(n, n - q, used)) {
            for (const Gen& xg : xs)
              for (const Gen& yg : ys) {
                Simplex sx(std::vector<int>(A.rbegin(), A.rend()), xg, p);
                Simplex sy(std::vector<int>(B.rbegin(), B.rend()), yg, q);
                cells.push_back(Gen::cell_pair(std::move(sx), std::move(sy)));
              }
          }
        }
      }
    }
    std::sort(cells.begin(), cells.end(), GenLess{});
    return cells;
  };
  return std::make_shared<SimplicialSet>(std::move(name), face, basis);
}

/// Normalized chains: freely generated by nondegenerate simplices, with the
/// alternating face sum as differential (degenerate faces vanish).
inline ComplexPtr normalized_chains(SpacePtr X, std::string name = "") {
  if (name.empty()) name = "C(" + X->name() + ")";
  GradedMap d(-1, [X](const Gen& g, int n) {
    FormalSum out;
    if (n == 0) return out;
    Simplex s = X->from_core(g, n);
    Int sign = 1;
    for (int i = 0; i <= n; ++i) {
      out += sign * chain_of(X->face(i, s));
      sign = -sign;
    }
    return out;
  });
  return make_complex(
      std::move(name), [X](int n) { return X->nondegenerate(n); }, std::move(d));
}

/// C_*(diagonal): x -> (x, x), a chain map into the product.
inline GradedMap diagonal_chain(SpacePtr X) {
  (void)X;
  return GradedMap(0, [](const Gen& g, int n) {
    Simplex s({}, g, n);
    return chain_of(make_product_simplex(s, s));
  });
}

}  // namespace tcp

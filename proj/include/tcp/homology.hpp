#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tcp/chain_complex.hpp"
#include "tcp/smith.hpp"

namespace tcp {

/// H_n in canonical form: free rank plus torsion coefficients d1 | d2 | ...
struct HomologyGroup {
  long long free_rank = 0;
  std::vector<Int> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }

  bool operator==(const HomologyGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }

  std::string to_string() const {
    if (trivial()) return "0";
    std::string s;
    if (free_rank == 1)
      s = "Z";
    else if (free_rank > 1)
      s = "Z^" + std::to_string(free_rank);
    for (const Int& d : torsion) {
      if (!s.empty()) s += "+";
      s += "Z/" + d.str();
    }
    return s;
  }
};

/// Matrix of d_n : C_n -> C_{n-1} in the FINITE bases (rows indexed by the
/// degree n-1 basis, columns by degree n).
inline IntMatrix boundary_matrix(const ChainComplex& C, int n) {
  const auto& dom = C.basis(n);
  const auto& codom = C.basis(n - 1);
  std::map<Gen, std::size_t, GenLess> row_of;
  for (std::size_t i = 0; i < codom.size(); ++i) row_of.emplace(codom[i], i);
  IntMatrix M(codom.size(), dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) {
    FormalSum dc = C.diff().apply_gen(dom[j], n);
    for (const auto& [g, c] : dc.terms()) {
      auto it = row_of.find(g);
      if (it == row_of.end())
        throw Error(C.name() + ": boundary of " + to_string(dom[j]) +
                    " leaves the enumerated basis at degree " +
                    std::to_string(n - 1) + " (term " + to_string(g) + ")");
      M.at(it->second, j) = c;
    }
  }
  return M;
}

inline HomologyGroup homology_group(const ChainComplex& C, int n) {
  const std::size_t dim_n = C.basis(n).size();
  SmithResult sn = smith_normal_form(boundary_matrix(C, n));
  SmithResult sn1 = smith_normal_form(boundary_matrix(C, n + 1));
  HomologyGroup h;
  h.free_rank = static_cast<long long>(dim_n) -
                static_cast<long long>(sn.rank) -
                static_cast<long long>(sn1.rank);
  if (h.free_rank < 0)
    throw Error(C.name() + ": negative homology rank at degree " +
                std::to_string(n) + " (differential does not square to zero?)");
  for (const Int& d : sn1.invariants)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

/// Representatives of a homology basis: `free_part` are cycles whose classes
/// generate the free quotient, `torsion_part` pairs a cycle with its order.
struct HomologyRepresentatives {
  std::vector<FormalSum> free_part;
  std::vector<std::pair<FormalSum, Int>> torsion_part;
};

inline HomologyRepresentatives homology_representatives(const ChainComplex& C,
                                                        int n) {
  const auto& basis_n = C.basis(n);
  IntMatrix Mn = boundary_matrix(C, n);
  IntMatrix Mn1 = boundary_matrix(C, n + 1);
  SmithResult sn = smith_normal_form(Mn);
  // kernel basis K = columns rank.. of V
  const std::size_t z = Mn.cols() - sn.rank;  // kernel rank
  // Express the image of d_{n+1} in kernel coordinates: rows rank.. of
  // Vinv * Mn1 (the first `rank` rows vanish because im(d_{n+1}) <= ker(d_n)).
  IntMatrix W = sn.Vinv.mul(Mn1);
  IntMatrix X(z, Mn1.cols());
  for (std::size_t i = 0; i < z; ++i)
    for (std::size_t j = 0; j < Mn1.cols(); ++j)
      X.at(i, j) = W.at(sn.rank + i, j);
  for (std::size_t i = 0; i < sn.rank; ++i)
    for (std::size_t j = 0; j < Mn1.cols(); ++j)
      if (W.at(i, j) != 0)
        throw Error(C.name() + ": image not contained in kernel at degree " +
                    std::to_string(n));
  SmithResult sx = smith_normal_form(X);
  // New kernel basis K' = K * Uinv(X); classes of the first rank(X) vectors
  // have orders given by the invariants, the rest generate the free part.
  HomologyRepresentatives reps;
  auto kernel_vector = [&](std::size_t col) {
    FormalSum v;
    for (std::size_t r = 0; r < z; ++r) {
      const Int& c = sx.Uinv.at(r, col);
      if (c == 0) continue;
      for (std::size_t i = 0; i < basis_n.size(); ++i) {
        const Int& k = sn.V.at(i, sn.rank + r);
        if (k != 0) v += FormalSum(basis_n[i], c * k);
      }
    }
    return v;
  };
  for (std::size_t c = 0; c < sx.rank; ++c)
    if (sx.invariants[c] > 1)
      reps.torsion_part.emplace_back(kernel_vector(c), sx.invariants[c]);
  for (std::size_t c = sx.rank; c < z; ++c)
    reps.free_part.push_back(kernel_vector(c));
  return reps;
}

}  // namespace tcp

#pragma once

#include <cstddef>
#include <vector>

#include "tcp/errors.hpp"
#include "tcp/ints.hpp"

namespace tcp {

class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntMatrix mul(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& v = at(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r.at(i, j) += v * o.at(k, j);
      }
    return r;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

/// Fraction-free determinant (Bareiss).
inline Int determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error("determinant: not square");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

/// U*M*V = D diagonal with invariant factors d1 | d2 | ... ; U, V unimodular.
/// Uinv and Vinv are maintained alongside so kernel/cokernel data can be
/// read off without a separate inversion.
struct SmithResult {
  IntMatrix D, U, V, Uinv, Vinv;
  std::vector<Int> invariants;  // positive, divisibility-ordered
  std::size_t rank = 0;
};

inline SmithResult smith_normal_form(IntMatrix A) {
  const std::size_t rows = A.rows(), cols = A.cols();
  SmithResult res;
  res.U = IntMatrix::identity(rows);
  res.Uinv = IntMatrix::identity(rows);
  res.V = IntMatrix::identity(cols);
  res.Vinv = IntMatrix::identity(cols);

  auto row_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(A.at(a, j), A.at(b, j));
    for (std::size_t j = 0; j < rows; ++j) {
      std::swap(res.U.at(a, j), res.U.at(b, j));
      std::swap(res.Uinv.at(j, a), res.Uinv.at(j, b));
    }
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(A.at(i, a), A.at(i, b));
    for (std::size_t i = 0; i < cols; ++i) {
      std::swap(res.V.at(i, a), res.V.at(i, b));
      std::swap(res.Vinv.at(a, i), res.Vinv.at(b, i));
    }
  };
  // row[a] += q*row[b]
  auto row_add = [&](std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t j = 0; j < cols; ++j) A.at(a, j) += q * A.at(b, j);
    for (std::size_t j = 0; j < rows; ++j) {
      res.U.at(a, j) += q * res.U.at(b, j);
      res.Uinv.at(j, b) -= q * res.Uinv.at(j, a);
    }
  };
  // col[a] += q*col[b]
  auto col_add = [&](std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t i = 0; i < rows; ++i) A.at(i, a) += q * A.at(i, b);
    for (std::size_t i = 0; i < cols; ++i) {
      res.V.at(i, a) += q * res.V.at(i, b);
      res.Vinv.at(b, i) -= q * res.Vinv.at(a, i);
    }
  };
  auto row_negate = [&](std::size_t a) {
    for (std::size_t j = 0; j < cols; ++j) A.at(a, j) = -A.at(a, j);
    for (std::size_t j = 0; j < rows; ++j) {
      res.U.at(a, j) = -res.U.at(a, j);
      res.Uinv.at(j, a) = -res.Uinv.at(j, a);
    }
  };

  const std::size_t steps = rows < cols ? rows : cols;
  std::size_t t = 0;
  for (; t < steps; ++t) {
    // deterministic pivot: smallest |entry| in the trailing submatrix,
    // first in row-major order
    std::size_t pi = t, pj = t;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const Int& v = A.at(i, j);
        if (v == 0) continue;
        Int a = abs(v);
        if (best == 0 || a < best) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    row_swap(t, pi);
    col_swap(t, pj);

    bool stable = false;
    while (!stable) {
      stable = true;
      // clear column t
      for (std::size_t i = t + 1; i < rows; ++i) {
        while (A.at(i, t) != 0) {
          Int q = A.at(i, t) / A.at(t, t);
          if (q != 0) row_add(i, t, -q);
          if (A.at(i, t) != 0) {
            row_swap(t, i);  // remainder is strictly smaller
            stable = false;
          }
        }
      }
      // clear row t
      for (std::size_t j = t + 1; j < cols; ++j) {
        while (A.at(t, j) != 0) {
          Int q = A.at(t, j) / A.at(t, t);
          if (q != 0) col_add(j, t, -q);
          if (A.at(t, j) != 0) {
            col_swap(t, j);
            stable = false;
          }
        }
      }
      if (!stable) continue;
      // pivot must divide the whole trailing block for d1 | d2 | ...
      for (std::size_t i = t + 1; i < rows && stable; ++i)
        for (std::size_t j = t + 1; j < cols && stable; ++j)
          if (A.at(i, j) % A.at(t, t) != 0) {
            row_add(t, i, 1);
            stable = false;
          }
    }
    if (A.at(t, t) < 0) row_negate(t);
  }

  res.rank = t;
  res.D = A;
  res.invariants.reserve(t);
  for (std::size_t k = 0; k < t; ++k) res.invariants.push_back(A.at(k, k));
  return res;
}

/// Integral basis of ker(M) as column vectors (length = cols of M).
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& M,
                                                  const SmithResult& snf) {
  std::vector<std::vector<Int>> out;
  for (std::size_t j = snf.rank; j < M.cols(); ++j) {
    std::vector<Int> v(M.cols());
    for (std::size_t i = 0; i < M.cols(); ++i) v[i] = snf.V.at(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace tcp

#pragma once

// Dense integer matrices over arbitrary-precision integers, with row-style
// Hermite normal form and Smith normal form with transforms.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ringsieve/error.hpp"

namespace ringsieve {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// floor(a / b) for b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// a mod m in [0, |m|).
inline Integer mod_nonneg(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw Error(ErrorKind::InvalidInput, "row length mismatch in matrix construction");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  std::vector<IntVector> row_list() const {
    std::vector<IntVector> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
  }
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  bool is_zero_row(std::size_t r) const {
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidInput, "matrix product shape mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? " (" : "(");
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? "," : "") << m(r, c);
      os << ')';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Row vector times matrix.
inline IntVector row_times(std::span<const Integer> v, const IntMatrix& m) {
  IntVector out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

/// Row-style Hermite normal form of the row lattice of `m`: upper echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result has exactly rank(m) rows.
inline IntMatrix hnf(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t i = pivot_row; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        if (!best || abs(a(i, c)) < abs(a(*best, c))) best = i;
      }
      if (!best) break;
      a.swap_rows(pivot_row, *best);
      bool cleared = true;
      for (std::size_t i = pivot_row + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row_multiple(i, pivot_row, -floor_div(a(i, c), a(pivot_row, c)));
        if (a(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (a(pivot_row, c) == 0) continue;
    if (a(pivot_row, c) < 0) a.negate_row(pivot_row);
    for (std::size_t i = 0; i < pivot_row; ++i)
      a.add_row_multiple(i, pivot_row, -floor_div(a(i, c), a(pivot_row, c)));
    ++pivot_row;
  }
  IntMatrix out(pivot_row, cols);
  for (std::size_t i = 0; i < pivot_row; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

struct SnfResult {
  IntMatrix U;      // m x m, unimodular
  IntMatrix V;      // n x n, unimodular
  IntMatrix V_inv;  // inverse of V
  IntMatrix D;      // m x n, U * A * V

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

/// Smith normal form with transforms: U * A * V = D, D diagonal with
/// non-negative entries d_1 | d_2 | ... (zeros last).
inline SnfResult snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfResult r{IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n), a};
  IntMatrix& d = r.D;

  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    d.add_col_multiple(dst, src, f);
    r.V.add_col_multiple(dst, src, f);
    r.V_inv.add_row_multiple(src, dst, -f);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    d.swap_cols(x, y);
    r.V.swap_cols(x, y);
    r.V_inv.swap_rows(x, y);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    d.add_row_multiple(dst, src, f);
    r.U.add_row_multiple(dst, src, f);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    d.swap_rows(x, y);
    r.U.swap_rows(x, y);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool any = false;
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (!best || abs(d(i, j)) < abs(d(best->first, best->second))) best = {{i, j}};
        }
      if (!best) break;
      any = true;
      row_swap(t, best->first);
      col_swap(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        row_add(i, t, -floor_div(d(i, t), d(t, t)));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        col_add(j, t, -floor_div(d(t, j), d(t, t)));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      row_add(t, *offender, 1);
    }
    if (!any) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      r.U.negate_row(t);
    }
  }
  return r;
}

/// Solve z * basis = x for a square upper-triangular basis (HNF). Returns
/// nullopt when x is not in the row lattice.
inline std::optional<IntVector> solve_upper(const IntMatrix& basis, std::span<const Integer> x) {
  const std::size_t n = basis.rows();
  IntVector rest(x.begin(), x.end());
  IntVector z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& pivot = basis(i, i);
    if (rest[i] % pivot != 0) return std::nullopt;
    z[i] = rest[i] / pivot;
    if (z[i] == 0) continue;
    for (std::size_t j = i; j < basis.cols(); ++j) rest[j] -= z[i] * basis(i, j);
  }
  for (const auto& v : rest)
    if (v != 0) return std::nullopt;
  return z;
}

/// Invariant-factor basis of Z^n / L for a full-rank row lattice L.
/// Coordinates of x are (x * to_invariant)_j mod factors[j]; generator j is
/// a representative in Z^n of the j-th invariant basis element.
struct InvariantBasis {
  std::vector<Integer> factors;  // each > 1, d_1 | d_2 | ...
  IntMatrix to_invariant;        // n x k
  IntMatrix generators;          // k x n

  std::size_t rank() const noexcept { return factors.size(); }

  IntVector coordinates(std::span<const Integer> x) const {
    IntVector y = row_times(x, to_invariant);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = mod_nonneg(y[j], factors[j]);
    return y;
  }

  IntVector representative(std::span<const Integer> coords) const {
    return row_times(coords, generators);
  }
};

inline InvariantBasis quotient_basis(const IntMatrix& lattice) {
  if (lattice.rows() != lattice.cols())
    throw Error(ErrorKind::RankDeficient, "quotient basis needs a full-rank square lattice basis");
  const std::size_t n = lattice.cols();
  SnfResult s = snf(lattice);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j) {
    if (s.D(j, j) == 0) throw Error(ErrorKind::RankDeficient, "lattice is not of full rank");
    if (s.D(j, j) != 1) keep.push_back(j);
  }
  InvariantBasis out;
  out.to_invariant = IntMatrix(n, keep.size());
  out.generators = IntMatrix(keep.size(), n);
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.factors.push_back(s.D(keep[c], keep[c]));
    for (std::size_t i = 0; i < n; ++i) {
      out.to_invariant(i, c) = s.V(i, keep[c]);
      out.generators(c, i) = s.V_inv(keep[c], i);
    }
  }
  return out;
}

/// Absolute determinant of a square upper-triangular matrix.
inline Integer triangular_det(const IntMatrix& m) {
  Integer det = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) det *= m(i, i);
  return abs(det);
}

}  // namespace ringsieve

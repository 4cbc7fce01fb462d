#pragma once

// Dense exact linear algebra over the rationals: reduced row echelon form,
// rank, nullspace, inverse, determinant, and congruence diagonalization of
// symmetric matrices.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "koszul/errors.hpp"
#include "koszul/rational.hpp"

namespace koszul {

using Vector = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::span<const Vector> cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    return m;
  }

  static Matrix from_rows(std::span<const Vector> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    return m;
  }

  /// Reshape a flat row-major vector into an n×n matrix.
  static Matrix square_from_flat(const Vector& flat, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n * n; ++i) m.data_[i] = flat[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  const Vector& flat() const noexcept { return data_; }

  Vector row(std::size_t r) const {
    return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  Vector col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  void append_row(const Vector& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
  }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
  bool is_skew() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }
  friend Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = s * a.data_[i];
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product: inner dimensions differ");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw ShapeMismatch("matrix-vector product: size mismatch");
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0 && v[k] != 0) out[i] += a(i, k) * v[k];
    return out;
  }

 private:
  static void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Vector scaled(const Vector& v, const Rational& s) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

inline Vector add(const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

/// Linear combination Σ coeffs[i] · vectors[i]; `n` is the common length.
inline Vector combine(std::span<const Vector> vectors, std::span<const Rational> coeffs,
                      std::size_t n) {
  Vector out(n);
  for (std::size_t b = 0; b < vectors.size(); ++b) {
    if (coeffs[b] == 0) continue;
    for (std::size_t i = 0; i < n; ++i)
      if (vectors[b][i] != 0) out[i] += coeffs[b] * vectors[b][i];
  }
  return out;
}

/// In-place reduced row echelon form. Returns the pivot column of each
/// nonzero row, in order. Row operations skip zero entries, which keeps the
/// sparse systems produced by the tensor modules cheap.
inline std::vector<std::size_t> rref_in_place(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(row, p);
    Rational inv = 1 / m(row, c);
    support.clear();
    for (std::size_t k = c; k < cols; ++k) {
      if (m(row, k) != 0) {
        m(row, k) *= inv;
        support.push_back(k);
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t k : support) m(r, k) -= f * m(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return rref_in_place(m).size(); }

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<Vector> nullspace(Matrix m) {
  const std::size_t n = m.cols();
  auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Independent subset spanning the same space (reduced echelon rows).
inline std::vector<Vector> row_basis(std::span<const Vector> vectors, std::size_t n) {
  Matrix m = Matrix::from_rows(vectors, n);
  auto pivots = rref_in_place(m);
  std::vector<Vector> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) out.push_back(m.row(r));
  return out;
}

inline std::size_t span_dim(std::span<const Vector> vectors, std::size_t n) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(vectors, n));
}

inline bool in_span(std::span<const Vector> basis, const Vector& v, std::size_t n) {
  std::vector<Vector> ext(basis.begin(), basis.end());
  std::size_t before = span_dim(ext, n);
  ext.push_back(v);
  return span_dim(ext, n) == before;
}

/// Coordinates of v in an independent `basis`, or nullopt when v is not in
/// the span.
inline std::optional<Vector> coordinates(std::span<const Vector> basis, const Vector& v,
                                         std::size_t n) {
  const std::size_t d = basis.size();
  Matrix aug(n, d + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) aug(r, c) = basis[c][r];
    aug(r, d) = v[r];
  }
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == d) return std::nullopt;
  Vector x(d);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, d);
  return x;
}

/// Basis of the intersection of two subspaces of Q^n.
inline std::vector<Vector> intersect(std::span<const Vector> a, std::span<const Vector> b,
                                     std::size_t n) {
  if (a.empty() || b.empty()) return {};
  // Solve Σ x_i a_i − Σ y_j b_j = 0; the intersection is spanned by Σ x_i a_i.
  Matrix m(n, a.size() + b.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < a.size(); ++i) m(r, i) = a[i][r];
    for (std::size_t j = 0; j < b.size(); ++j) m(r, a.size() + j) = -b[j][r];
  }
  std::vector<Vector> out;
  for (const auto& sol : nullspace(m)) {
    Vector v = combine(a, std::span<const Rational>(sol.data(), a.size()), n);
    out.push_back(std::move(v));
  }
  return row_basis(out, n);
}

/// Some solution of a x = b, or nullopt when the system is inconsistent.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  const std::size_t n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  Vector x(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, n);
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) throw ShapeMismatch("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline Rational determinant(Matrix m) {
  if (!m.is_square()) throw ShapeMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Signature of a symmetric matrix by exact congruence diagonalization
/// (symmetric Gaussian reduction, Sylvester's law of inertia).
inline Signature signature(Matrix a) {
  if (!a.is_symmetric()) throw ShapeMismatch("signature requires a symmetric matrix");
  const std::size_t n = a.rows();
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      // Bring a nonzero diagonal entry to k, or create one from an
      // off-diagonal entry via x_k += x_j.
      std::size_t d = k + 1;
      while (d < n && a(d, d) == 0) ++d;
      if (d < n) {
        a.swap_rows(k, d);
        for (std::size_t r = 0; r < n; ++r) std::swap(a(r, k), a(r, d));
      } else {
        std::size_t j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) {
          ++sig.zero;
          continue;
        }
        for (std::size_t c = 0; c < n; ++c) a(k, c) += a(j, c);
        for (std::size_t r = 0; r < n; ++r) a(r, k) += a(r, j);
      }
    }
    const Rational pivot = a(k, k);
    (pivot > 0 ? sig.positive : sig.negative)++;
    // Schur complement on the trailing block keeps it symmetric.
    Vector col(n);
    for (std::size_t r = k + 1; r < n; ++r) col[r] = a(r, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (col[r] == 0) continue;
      Rational f = col[r] / pivot;
      for (std::size_t c = k + 1; c < n; ++c)
        if (col[c] != 0) a(r, c) -= f * col[c];
    }
    for (std::size_t r = k + 1; r < n; ++r) a(r, k) = a(k, r) = 0;
  }
  return sig;
}

/// Sylvester's criterion: all leading principal minors strictly positive.
inline bool is_positive_definite(const Matrix& a) {
  if (!a.is_symmetric()) return false;
  const std::size_t n = a.rows();
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = a(i, j);
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

}  // namespace koszul

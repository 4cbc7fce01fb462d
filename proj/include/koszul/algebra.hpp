#pragma once

// Finite-dimensional algebras over the rationals given by structure
// constants, and their defect tensors.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/errors.hpp"
#include "koszul/forms.hpp"
#include "koszul/linalg.hpp"
#include "koszul/tensor.hpp"

namespace koszul {

using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// General bilinear product e_i·e_j = Σ_k Γ^k_{ij} e_k. Nothing beyond the
/// shape is imposed; associativity and the KV property are computed.
class BilinearProduct {
 public:
  BilinearProduct() = default;
  explicit BilinearProduct(std::size_t dim) : BilinearProduct(Table3(dim)) {}
  explicit BilinearProduct(Table3 gamma) : gamma_(std::move(gamma)) { build_rows(); }

  std::size_t dim() const noexcept { return gamma_.dim(); }
  const Table3& table() const noexcept { return gamma_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return gamma_(i, j, k);
  }

  /// Nonzero components of e_i·e_j.
  const SparseVector& basis_product(std::size_t i, std::size_t j) const {
    return rows_[i * dim() + j];
  }

  Vector multiply(const Vector& x, const Vector& y) const {
    const std::size_t m = dim();
    Vector out(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (y[j] == 0) continue;
        Rational s = x[i] * y[j];
        for (const auto& [k, v] : basis_product(i, j)) out[k] += s * v;
      }
    }
    return out;
  }

  /// Left multiplication L_{e_i}: column j holds e_i·e_j.
  Matrix left_matrix(std::size_t i) const {
    Matrix l(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& [k, v] : basis_product(i, j)) l(k, j) = v;
    return l;
  }

  /// Right multiplication R_{e_j}: column i holds e_i·e_j.
  Matrix right_matrix(std::size_t j) const {
    Matrix r(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (const auto& [k, v] : basis_product(i, j)) r(k, i) = v;
    return r;
  }

  Matrix right_matrix(const Vector& a) const {
    Matrix r(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
      if (a[j] != 0) r = r + a[j] * right_matrix(j);
    return r;
  }

  bool is_zero() const { return gamma_.is_zero(); }
  bool is_associative() const;
  bool is_kv() const;

  friend bool operator==(const BilinearProduct& a, const BilinearProduct& b) {
    return a.gamma_ == b.gamma_;
  }

 private:
  void build_rows() {
    const std::size_t m = dim();
    rows_.assign(m * m, {});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          if (gamma_(i, j, k) != 0) rows_[i * m + j].emplace_back(k, gamma_(i, j, k));
  }

  Table3 gamma_;
  std::vector<SparseVector> rows_;
};

/// Σ_cyclic [[e_i,e_j],e_k] along e_l, stored at (i, j, k, l). The input
/// table is read as a bracket through its basis products.
inline DefectTensor jacobi_defect(const BilinearProduct& bracket) {
  const std::size_t m = bracket.dim();
  DefectTensor out(m, 4);
  auto add_double = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t i,
                        std::size_t j, std::size_t k) {
    for (const auto& [p, v] : bracket.basis_product(a, b))
      for (const auto& [l, w] : bracket.basis_product(p, c)) out(i, j, k, l) += v * w;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        add_double(i, j, k, i, j, k);
        add_double(j, k, i, i, j, k);
        add_double(k, i, j, i, j, k);
      }
  return out;
}

inline DefectTensor jacobi_defect(const Table3& c) { return jacobi_defect(BilinearProduct(c)); }

/// First basis triple (i ≤ j ≤ k order of the full scan) where the Jacobi
/// sum is nonzero; skew input is assumed.
inline std::optional<std::array<std::size_t, 3>> first_jacobi_failure(const BilinearProduct& bracket) {
  const std::size_t m = bracket.dim();
  Vector acc(m);
  auto add_double = [&](std::size_t a, std::size_t b, std::size_t c) {
    for (const auto& [p, v] : bracket.basis_product(a, b))
      for (const auto& [l, w] : bracket.basis_product(p, c)) acc[l] += v * w;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        for (auto& x : acc) x = 0;
        add_double(i, j, k);
        add_double(j, k, i);
        add_double(k, i, j);
        if (!koszul::is_zero(acc)) return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

/// Lie algebra by structure constants [e_i,e_j] = Σ_k c^k_{ij} e_k.
/// Construction checks skewness and the Jacobi identity.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(Table3 c) : bracket_(std::move(c)) {
    const std::size_t m = dim();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          if (bracket_(i, j, k) != -bracket_(j, i, k))
            throw ShapeMismatch("bracket table is not skew at (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
    if (auto t = first_jacobi_failure(bracket_))
      throw JacobiViolation(*t, "Jacobi identity fails on basis triple (" +
                                    std::to_string((*t)[0]) + "," + std::to_string((*t)[1]) + "," +
                                    std::to_string((*t)[2]) + ")");
  }

  static LieAlgebra abelian(std::size_t m) { return LieAlgebra(Table3(m)); }

  std::size_t dim() const noexcept { return bracket_.dim(); }
  const Table3& table() const noexcept { return bracket_.table(); }
  const BilinearProduct& as_product() const noexcept { return bracket_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return bracket_(i, j, k);
  }
  const SparseVector& basis_bracket(std::size_t i, std::size_t j) const {
    return bracket_.basis_product(i, j);
  }
  Vector bracket(const Vector& x, const Vector& y) const { return bracket_.multiply(x, y); }

  /// ad_{e_i}: column j holds [e_i, e_j].
  Matrix ad(std::size_t i) const { return bracket_.left_matrix(i); }

  bool is_abelian() const { return bracket_.is_zero(); }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.bracket_ == b.bracket_;
  }

 private:
  BilinearProduct bracket_;
};

/// Table of f(e_i,e_j,e_k) along e_l for f(x,y,z) = (x·y)·z − x·(y·z).
inline DefectTensor associator_defect(const BilinearProduct& p) {
  const std::size_t m = p.dim();
  DefectTensor out(m, 4);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        for (const auto& [a, v] : p.basis_product(i, j))
          for (const auto& [l, w] : p.basis_product(a, k)) out(i, j, k, l) += v * w;
        for (const auto& [a, v] : p.basis_product(j, k))
          for (const auto& [l, w] : p.basis_product(i, a)) out(i, j, k, l) -= v * w;
      }
  return out;
}

/// KV(x,y,z) = assoc(x,y,z) − assoc(y,x,z); zero iff p is left-symmetric.
inline DefectTensor kv_anomaly(const BilinearProduct& p) {
  const std::size_t m = p.dim();
  auto assoc = associator_defect(p);
  DefectTensor out(m, 4);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out(i, j, k, l) = assoc(i, j, k, l) - assoc(j, i, k, l);
  return out;
}

namespace detail {

/// (x·y)·z − x·(y·z) on basis vectors, dense in the output index.
inline Vector basis_associator(const BilinearProduct& p, std::size_t i, std::size_t j, std::size_t k) {
  Vector out(p.dim());
  for (const auto& [a, v] : p.basis_product(i, j))
    for (const auto& [l, w] : p.basis_product(a, k)) out[l] += v * w;
  for (const auto& [a, v] : p.basis_product(j, k))
    for (const auto& [l, w] : p.basis_product(i, a)) out[l] -= v * w;
  return out;
}

}  // namespace detail

// Streaming checks: the full rank-4 tensors are too large for the
// 42-dimensional tower level.
inline bool BilinearProduct::is_associative() const {
  const std::size_t m = dim();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (!koszul::is_zero(detail::basis_associator(*this, i, j, k))) return false;
  return true;
}

inline bool BilinearProduct::is_kv() const {
  const std::size_t m = dim();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (detail::basis_associator(*this, i, j, k) != detail::basis_associator(*this, j, i, k))
          return false;
  return true;
}

/// Commutator bracket Γ^k_{ij} − Γ^k_{ji}; throws JacobiViolation when it
/// is not a Lie bracket.
inline LieAlgebra commutator_bracket(const BilinearProduct& p) {
  const std::size_t m = p.dim();
  Table3 c(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) c(i, j, k) = p(i, j, k) - p(j, i, k);
  return LieAlgebra(std::move(c));
}

/// K(x,y) = trace(ad_x ∘ ad_y).
inline BilinearForm killing_form(const LieAlgebra& lie) {
  const std::size_t m = lie.dim();
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < m; ++i) ads.push_back(lie.ad(i));
  Matrix k(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Matrix prod = ads[i] * ads[j];
      Rational tr = 0;
      for (std::size_t d = 0; d < m; ++d) tr += prod(d, d);
      k(i, j) = k(j, i) = tr;
    }
  return BilinearForm(std::move(k), Symmetry::symmetric);
}

/// Structure constants in the basis e'_a = Σ_i P_{ia} e_i (P invertible).
inline Table3 change_basis(const Table3& t, const Matrix& p) {
  const std::size_t m = t.dim();
  auto pinv = inverse(p);
  if (!pinv) throw ShapeMismatch("change of basis matrix is singular");
  // T'^c_{ab} = Σ_{ijk} P_{ia} P_{jb} T^k_{ij} (P^{-1})_{ck}
  Table3 out(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Vector val(m);
      for (std::size_t i = 0; i < m; ++i) {
        if (p(i, a) == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
          if (p(j, b) == 0) continue;
          Rational s = p(i, a) * p(j, b);
          for (std::size_t k = 0; k < m; ++k)
            if (t(i, j, k) != 0) val[k] += s * t(i, j, k);
        }
      }
      Vector coords = (*pinv) * val;
      for (std::size_t c = 0; c < m; ++c) out(a, b, c) = coords[c];
    }
  return out;
}

}  // namespace koszul

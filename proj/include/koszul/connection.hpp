#pragma once

// Left-invariant Koszul connections on a Lie algebra: Cartan's three
// canonical connections, torsion and curvature, the metric dual, and the
// α-family.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "koszul/algebra.hpp"
#include "koszul/errors.hpp"
#include "koszul/forms.hpp"

namespace koszul {

/// ∇_{e_i} e_j = Σ_k Γ^k_{ij} e_k over a fixed Lie algebra.
class InvariantConnection {
 public:
  InvariantConnection() = default;
  InvariantConnection(LieAlgebra base, BilinearProduct gamma)
      : base_(std::move(base)), gamma_(std::move(gamma)) {
    if (base_.dim() != gamma_.dim())
      throw ShapeMismatch("connection coefficients and Lie algebra differ in dimension");
  }

  std::size_t dim() const noexcept { return base_.dim(); }
  const LieAlgebra& base() const noexcept { return base_; }
  const BilinearProduct& product() const noexcept { return gamma_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return gamma_(i, j, k);
  }
  /// (Γ_i)^k_j = Γ^k_{ij}, the matrix of ∇_{e_i}.
  Matrix gamma_matrix(std::size_t i) const { return gamma_.left_matrix(i); }

  friend bool operator==(const InvariantConnection& a, const InvariantConnection& b) {
    return a.base_ == b.base_ && a.gamma_ == b.gamma_;
  }

 private:
  LieAlgebra base_;
  BilinearProduct gamma_;
};

enum class CartanKind { minus, zero, plus };

/// ∇⁻ = 0, ∇⁰ = ½[·,·], ∇⁺ = [·,·].
inline InvariantConnection cartan_connection(const LieAlgebra& lie, CartanKind kind) {
  Rational scale = kind == CartanKind::minus ? Rational(0)
                   : kind == CartanKind::zero ? Rational(1, 2)
                                              : Rational(1);
  return InvariantConnection(lie, BilinearProduct(scale * lie.table()));
}

/// T^k_{ij} = Γ^k_{ij} − Γ^k_{ji} − c^k_{ij}.
inline DefectTensor torsion(const InvariantConnection& conn) {
  const std::size_t m = conn.dim();
  DefectTensor t(m, 3);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        t(i, j, k) = conn(i, j, k) - conn(j, i, k) - conn.base()(i, j, k);
  return t;
}

/// R(e_i,e_j)e_k along e_l at (i, j, k, l), with
/// R(X,Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_{[X,Y]}.
inline DefectTensor curvature(const InvariantConnection& conn) {
  const std::size_t m = conn.dim();
  std::vector<Matrix> g;
  for (std::size_t i = 0; i < m; ++i) g.push_back(conn.gamma_matrix(i));
  DefectTensor r(m, 4);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Matrix rij = g[i] * g[j] - g[j] * g[i];
      for (const auto& [l, c] : conn.base().basis_bracket(i, j)) rij = rij - c * g[l];
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) r(i, j, k, l) = rij(l, k);
    }
  return r;
}

struct FlatnessCertificate {
  bool flat = false;
  /// "torsion" or "curvature" when not flat.
  std::string failing_tensor;
  std::vector<std::size_t> index;
};

inline FlatnessCertificate is_locally_flat(const InvariantConnection& conn) {
  if (auto idx = torsion(conn).first_nonzero()) return {false, "torsion", *idx};
  if (auto idx = curvature(conn).first_nonzero()) return {false, "curvature", *idx};
  return {true, "", {}};
}

inline bool is_torsion_free(const InvariantConnection& conn) { return torsion(conn).is_zero(); }

/// The unique ∇^g with g(∇^g_{e_i}e_j, e_k) = −g(e_j, ∇_{e_i}e_k), i.e.
/// Γ^g_i = −g⁻¹ Γ_iᵀ g.
inline InvariantConnection amari_dual(const InvariantConnection& conn, const BilinearForm& g) {
  const std::size_t m = conn.dim();
  if (g.dim() != m) throw ShapeMismatch("metric and connection differ in dimension");
  if (g.symmetry() != Symmetry::symmetric && !g.matrix().is_symmetric())
    throw SingularMetric("Amari dual requires a symmetric metric");
  auto ginv = inverse(g.matrix());
  if (!ginv) throw SingularMetric("metric has rank " + std::to_string(g.rank()) + " < " +
                                  std::to_string(m));
  Table3 dual(m);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix d = Rational(-1) * ((*ginv) * conn.gamma_matrix(i).transpose() * g.matrix());
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) dual(i, j, k) = d(k, j);
  }
  return InvariantConnection(conn.base(), BilinearProduct(std::move(dual)));
}

/// (1+α)/2 ∇ + (1−α)/2 ∇*.
inline InvariantConnection alpha_connection(const InvariantConnection& conn,
                                            const InvariantConnection& dual,
                                            const Rational& alpha) {
  if (conn.dim() != dual.dim()) throw ShapeMismatch("α-connection inputs differ in dimension");
  Table3 t = Rational((1 + alpha) / 2) * conn.product().table() +
             Rational((1 - alpha) / 2) * dual.product().table();
  return InvariantConnection(conn.base(), BilinearProduct(std::move(t)));
}

/// (∇_{e_i} b)(e_j, e_k) = −b(∇_{e_i}e_j, e_k) − b(e_j, ∇_{e_i}e_k); true
/// when every component vanishes.
inline bool is_parallel(const BilinearForm& b, const InvariantConnection& conn) {
  const std::size_t m = conn.dim();
  for (std::size_t i = 0; i < m; ++i) {
    Matrix gi = conn.gamma_matrix(i);
    // b(Γ_i x, y) + b(x, Γ_i y) = (Γ_iᵀ B + B Γ_i)(x, y)
    Matrix d = gi.transpose() * b.matrix() + b.matrix() * gi;
    if (!d.is_zero()) return false;
  }
  return true;
}

}  // namespace koszul

#pragma once

// Exact solution spaces of the gauge equations at the Lie algebra level.
//
// FE(∇∇*) on invariant endomorphisms is a plain linear system. FE*(∇), the
// equation ∇²X = 0 on vector fields, is solved on the simply connected group
// by prolongation: a solution X = f^j e_j in the left-invariant frame is
// determined by the pair s = (f, A) with A = ∇X (columns A e_i = ∇_{e_i} X).
// Along the frame, s obeys the linear system e_i s = M_i s with
//
//   e_i f = A e_i − Γ_i f,        e_i A = A Γ_i − Γ_i A,
//
// where (Γ_i)^k_j = Γ^k_{ij}. Since [e_i, e_j] = c^k_{ij} e_k, a solution
// through s exists iff s lies in a subspace W that is invariant under every
// M_i and annihilated by every F_ij = [M_i, M_j] + Σ_k c^k_{ij} M_k
// (Frobenius on the trivialized bundle). W is the largest such subspace and
// is computed by shrinking ∩ ker F_ij to its M-invariant core. The pointwise
// rank of the solution sheaf is the dimension of W's projection onto f.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "koszul/algebra.hpp"
#include "koszul/connection.hpp"
#include "koszul/errors.hpp"
#include "koszul/forms.hpp"
#include "koszul/linalg.hpp"

namespace koszul {

enum class Ambient { endomorphisms, vectors, forms, stacked };

inline std::string to_string(Ambient a) {
  switch (a) {
    case Ambient::endomorphisms: return "endomorphisms";
    case Ambient::vectors: return "vectors";
    case Ambient::forms: return "forms";
    case Ambient::stacked: return "stacked";
  }
  return "vectors";
}

/// A subspace given by an independent basis. Endomorphisms and forms are
/// flattened row-major m×m matrices (φ e_j = Σ_k φ_{kj} e_k, b_{ij} =
/// b(e_i,e_j)); stacked vectors are (f, A) with A flattened after f.
struct LinearSolutionSpace {
  Ambient ambient = Ambient::vectors;
  std::size_t m = 0;
  Symmetry form_symmetry = Symmetry::general;
  std::vector<Vector> basis;

  std::size_t dim() const noexcept { return basis.size(); }
  std::size_t ambient_size() const noexcept {
    switch (ambient) {
      case Ambient::vectors: return m;
      case Ambient::stacked: return m + m * m;
      default: return m * m;
    }
  }
  Matrix element_matrix(std::size_t b) const { return Matrix::square_from_flat(basis[b], m); }
};

namespace detail {

/// Solves apply(Σ x_b param[b]) = 0 for x and returns the resulting
/// elements; `apply` is linear from the ambient space into Q^rows.
inline std::vector<Vector> solve_in_span(const std::vector<Vector>& params, std::size_t ambient,
                                         const std::function<Vector(const Vector&)>& apply) {
  if (params.empty()) return {};
  std::vector<Vector> images;
  images.reserve(params.size());
  for (const auto& p : params) images.push_back(apply(p));
  const std::size_t rows = images.front().size();
  Matrix sys = Matrix::from_columns(images, rows);
  std::vector<Vector> out;
  for (const auto& x : nullspace(sys)) out.push_back(combine(params, x, ambient));
  return out;
}

inline void verify_solutions(const std::vector<Vector>& basis,
                             const std::function<Vector(const Vector&)>& apply,
                             const char* what) {
  for (const auto& b : basis)
    if (!is_zero(apply(b)))
      throw ConformanceMismatch(std::string(what) + ": basis element fails re-verification");
}

inline std::vector<Vector> form_parameters(std::size_t m, Symmetry sym) {
  std::vector<Vector> params;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (sym == Symmetry::symmetric && j < i) continue;
      if (sym == Symmetry::skew && j <= i) continue;
      Vector v(m * m);
      v[i * m + j] = 1;
      if (sym == Symmetry::symmetric) v[j * m + i] = 1;
      if (sym == Symmetry::skew) v[j * m + i] = -1;
      params.push_back(std::move(v));
    }
  return params;
}

inline Vector flatten(const Matrix& a) { return a.flat(); }

}  // namespace detail

/// M(∇,∇*) = {φ : ∇*_{e_i} ∘ φ − φ ∘ ∇_{e_i} = 0 ∀i}.
inline LinearSolutionSpace solve_gauge_equation(const InvariantConnection& conn,
                                                const InvariantConnection& dual) {
  const std::size_t m = conn.dim();
  if (dual.dim() != m) throw ShapeMismatch("gauge equation: connections differ in dimension");
  std::vector<Matrix> g, gs;
  for (std::size_t i = 0; i < m; ++i) {
    g.push_back(conn.gamma_matrix(i));
    gs.push_back(dual.gamma_matrix(i));
  }
  auto apply = [&](const Vector& flat) {
    Matrix phi = Matrix::square_from_flat(flat, m);
    Vector out;
    out.reserve(m * m * m);
    for (std::size_t i = 0; i < m; ++i) {
      Matrix d = gs[i] * phi - phi * g[i];
      out.insert(out.end(), d.flat().begin(), d.flat().end());
    }
    return out;
  };
  std::vector<Vector> params;
  for (std::size_t n = 0; n < m * m; ++n) params.push_back(unit_vector(m * m, n));
  LinearSolutionSpace space{Ambient::endomorphisms, m, Symmetry::general, {}};
  space.basis = detail::solve_in_span(params, m * m, apply);
  detail::verify_solutions(space.basis, apply, "gauge equation");
  return space;
}

/// ∇-parallel bilinear forms in the declared symmetry class.
inline LinearSolutionSpace parallel_forms(const InvariantConnection& conn, Symmetry sym) {
  const std::size_t m = conn.dim();
  std::vector<Matrix> g;
  for (std::size_t i = 0; i < m; ++i) g.push_back(conn.gamma_matrix(i));
  auto apply = [&](const Vector& flat) {
    Matrix b = Matrix::square_from_flat(flat, m);
    Vector out;
    out.reserve(m * m * m);
    for (std::size_t i = 0; i < m; ++i) {
      Matrix d = g[i].transpose() * b + b * g[i];
      out.insert(out.end(), d.flat().begin(), d.flat().end());
    }
    return out;
  };
  LinearSolutionSpace space{Ambient::forms, m, sym, {}};
  space.basis = detail::solve_in_span(detail::form_parameters(m, sym), m * m, apply);
  detail::verify_solutions(space.basis, apply, "parallel forms");
  return space;
}

/// Φ and Φ* with g(Φx,y) and g(Φ*x,y) the symmetric and skew parts of
/// g(φx,y).
struct GaugePair {
  Matrix sym;
  Matrix skew;
};

inline GaugePair phi_split(const Matrix& phi, const BilinearForm& g) {
  const std::size_t m = g.dim();
  if (phi.rows() != m || phi.cols() != m) throw ShapeMismatch("phi_split: shape mismatch");
  if (!g.matrix().is_symmetric()) throw SingularMetric("phi_split requires a symmetric metric");
  auto ginv = inverse(g.matrix());
  if (!ginv) throw SingularMetric("phi_split: metric is degenerate");
  Matrix b = phi.transpose() * g.matrix();  // b(x,y) = g(φx, y)
  Matrix bt = b.transpose();
  Rational half(1, 2);
  Matrix s = half * (b + bt);
  Matrix a = half * (b - bt);
  // g(Ψx,y) = c(x,y)  ⟺  Ψᵀ G = C  ⟺  Ψ = G⁻¹ Cᵀ
  return {(*ginv) * s.transpose(), (*ginv) * a.transpose()};
}

/// Form matrix of g(φx, y).
inline Matrix form_of(const Matrix& phi, const BilinearForm& g) {
  return phi.transpose() * g.matrix();
}

struct FeStarSolutions {
  LinearSolutionSpace w;
  std::size_t r_b = 0;
  std::size_t shrink_steps = 0;
};

namespace detail {

/// Evolution operators M_i on (f, A), A(k, i) stored at m + k·m + i.
inline std::vector<Matrix> evolution_operators(const InvariantConnection& conn) {
  const std::size_t m = conn.dim();
  const std::size_t n = m + m * m;
  auto a_at = [m](std::size_t k, std::size_t i) { return m + k * m + i; };
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < m; ++i) {
    Matrix gi = conn.gamma_matrix(i);
    Matrix op(n, n);
    // f-rows: (A e_i)_k − (Γ_i f)_k
    for (std::size_t k = 0; k < m; ++k) {
      op(k, a_at(k, i)) += 1;
      for (std::size_t j = 0; j < m; ++j) op(k, j) -= gi(k, j);
    }
    // A-rows: (A Γ_i − Γ_i A)(k, j)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l) {
          op(a_at(k, j), a_at(k, l)) += gi(l, j);
          op(a_at(k, j), a_at(l, j)) -= gi(k, l);
        }
    ops.push_back(std::move(op));
  }
  return ops;
}

/// Largest subspace of span(basis) invariant under every operator.
inline std::vector<Vector> invariant_core(std::vector<Vector> basis, const std::vector<Matrix>& ops,
                                          std::size_t n, std::size_t& steps) {
  steps = 0;
  while (!basis.empty()) {
    // Rows of `ann` span the annihilator of the current subspace.
    Matrix bt = Matrix::from_rows(basis, n);
    std::vector<Vector> ann = nullspace(bt);
    if (ann.empty()) return basis;
    Matrix b = bt.transpose();
    Matrix cons(0, basis.size());
    for (const auto& op : ops) {
      Matrix image = op * b;
      for (const auto& y : ann) {
        Vector row(basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c)
          for (std::size_t r = 0; r < n; ++r)
            if (y[r] != 0 && image(r, c) != 0) row[c] += y[r] * image(r, c);
        cons.append_row(row);
      }
    }
    auto kernel = cons.rows() == 0 ? std::vector<Vector>{} : nullspace(cons);
    if (cons.rows() == 0 || kernel.size() == basis.size()) return basis;
    std::vector<Vector> next;
    for (const auto& x : kernel) next.push_back(combine(basis, x, n));
    basis = std::move(next);
    ++steps;
  }
  return basis;
}

}  // namespace detail

/// Solution space of FE*(∇) on the simply connected group, as initial data
/// (f, A) at the identity.
inline FeStarSolutions solve_fe_star(const InvariantConnection& conn) {
  const std::size_t m = conn.dim();
  const std::size_t n = m + m * m;
  auto ops = detail::evolution_operators(conn);
  Matrix compat(0, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Matrix f = ops[i] * ops[j] - ops[j] * ops[i];
      for (const auto& [k, c] : conn.base().basis_bracket(i, j)) f = f + c * ops[k];
      for (std::size_t r = 0; r < n; ++r) compat.append_row(f.row(r));
    }
  std::vector<Vector> start;
  if (compat.rows() == 0) {
    for (std::size_t c = 0; c < n; ++c) start.push_back(unit_vector(n, c));
  } else {
    start = nullspace(compat);
  }
  FeStarSolutions out;
  out.w = LinearSolutionSpace{Ambient::stacked, m, Symmetry::general, {}};
  out.w.basis = detail::invariant_core(std::move(start), ops, n, out.shrink_steps);
  if (out.shrink_steps > n)
    throw ConformanceMismatch("FE* stabilization exceeded m + m² shrink steps");
  std::vector<Vector> values;
  for (const auto& s : out.w.basis) values.emplace_back(s.begin(), s.begin() + m);
  out.r_b = span_dim(values, m);
  return out;
}

/// FE**(∇) coincides with FE*(∇) for torsion-free ∇ through
/// L_X∇ = ι_X R^∇ + ∇²X; connections with torsion are not supported.
inline FeStarSolutions solve_fe_star_star(const InvariantConnection& conn) {
  if (!is_torsion_free(conn))
    throw Unsupported("FE** is only available for torsion-free connections");
  return solve_fe_star(conn);
}

struct GNablaSubalgebra {
  LinearSolutionSpace space;
  /// Closed under the connection product; guaranteed when the product is KV.
  bool is_subalgebra = false;
  bool product_is_kv = false;
};

/// {a : ∇_{e_i}∇_{e_j} a − ∇_{∇_{e_i}e_j} a = 0 ∀i,j}.
inline GNablaSubalgebra g_nabla_subalgebra(const InvariantConnection& conn) {
  const std::size_t m = conn.dim();
  std::vector<Matrix> g;
  for (std::size_t i = 0; i < m; ++i) g.push_back(conn.gamma_matrix(i));
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Matrix op = g[i] * g[j];
      for (const auto& [l, v] : conn.product().basis_product(i, j)) op = op - v * g[l];
      ops.push_back(std::move(op));
    }
  auto apply = [&](const Vector& a) {
    Vector out;
    for (const auto& op : ops) {
      Vector r = op * a;
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  };
  std::vector<Vector> params;
  for (std::size_t i = 0; i < m; ++i) params.push_back(unit_vector(m, i));
  GNablaSubalgebra out;
  out.space = LinearSolutionSpace{Ambient::vectors, m, Symmetry::general, {}};
  out.space.basis = m == 0 ? std::vector<Vector>{} : detail::solve_in_span(params, m, apply);
  detail::verify_solutions(out.space.basis, apply, "G_nabla");
  out.product_is_kv = conn.product().is_kv();
  out.is_subalgebra = true;
  for (const auto& a : out.space.basis)
    for (const auto& b : out.space.basis)
      if (!in_span(out.space.basis, conn.product().multiply(a, b), m)) out.is_subalgebra = false;
  if (out.product_is_kv && !out.is_subalgebra)
    throw ConformanceMismatch("G_nabla of a KV product is not a subalgebra");
  return out;
}

struct KernelImageSplit {
  std::vector<Vector> kernel;
  std::vector<Vector> image;
  bool dims_add_up = false;
  bool orthogonal = false;
  bool self_adjoint = false;
};

/// Kernel and image of a g-symmetric or g-skew endomorphism, with exact
/// checks of the dimension count and g-orthogonality.
inline KernelImageSplit kernel_image_split(const Matrix& phi, const BilinearForm& g) {
  const std::size_t m = g.dim();
  if (!g.is_positive_definite()) throw SingularMetric("kernel_image_split needs a positive definite g");
  Matrix b = form_of(phi, g);
  KernelImageSplit out;
  if (b.is_symmetric()) {
    out.self_adjoint = true;
  } else if (!b.is_skew()) {
    throw NotSelfOrSkewAdjoint("endomorphism is neither g-symmetric nor g-skew");
  }
  out.kernel = nullspace(phi);
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < m; ++c) cols.push_back(phi.col(c));
  out.image = row_basis(cols, m);
  out.dims_add_up = out.kernel.size() + out.image.size() == m;
  out.orthogonal = true;
  for (const auto& u : out.kernel)
    for (const auto& v : out.image)
      if (g.eval(u, v) != 0) out.orthogonal = false;
  return out;
}

}  // namespace koszul

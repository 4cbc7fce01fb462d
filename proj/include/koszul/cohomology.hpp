#pragma once

// Cochain complexes at the algebra level: KV (vector and scalar valued),
// Chevalley–Eilenberg, Hochschild, and the Maurer–Cartan identity.
//
// A degree-q cochain with values in a module of dimension w is a flat
// vector of length m^q·w; the multi-index (x_1..x_q) is read in base m with
// x_1 most significant, followed by the module component.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "koszul/algebra.hpp"
#include "koszul/errors.hpp"
#include "koszul/gauge.hpp"
#include "koszul/linalg.hpp"
#include "koszul/tensor.hpp"

namespace koszul {

enum class KvCoefficients { adjoint, scalar };
enum class CeCoefficients { trivial, adjoint };

inline std::string to_string(KvCoefficients c) { return c == KvCoefficients::adjoint ? "adjoint" : "scalar"; }
inline std::string to_string(CeCoefficients c) { return c == CeCoefficients::adjoint ? "adjoint" : "trivial"; }

struct CohomologyDegree {
  std::size_t degree = 0;
  std::size_t cochains = 0;
  std::size_t kernel = 0;
  std::size_t image = 0;  // image of the incoming coboundary
  std::size_t h = 0;
};

struct CohomologyReport {
  std::string complex;
  /// How degree 0 is modeled.
  std::string c0_rule;
  std::vector<CohomologyDegree> degrees;

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees) out.push_back(d.h);
    return out;
  }
};

namespace detail {

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::vector<std::size_t> decode(std::size_t code, std::size_t m, std::size_t q) {
  std::vector<std::size_t> t(q);
  for (std::size_t p = q; p-- > 0;) {
    t[p] = code % m;
    code /= m;
  }
  return t;
}

inline std::size_t encode(const std::vector<std::size_t>& t, std::size_t m) {
  std::size_t code = 0;
  for (auto x : t) code = code * m + x;
  return code;
}

/// Assembles a CohomologyReport from the cochain dimensions and the
/// coboundary ranks (rank[q] is the rank of δ_q : C^q → C^{q+1}).
inline CohomologyReport assemble(std::string complex, std::string c0_rule,
                                 const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& ranks) {
  CohomologyReport r{std::move(complex), std::move(c0_rule), {}};
  for (std::size_t q = 0; q < dims.size(); ++q) {
    CohomologyDegree d;
    d.degree = q;
    d.cochains = dims[q];
    d.kernel = dims[q] - ranks[q];
    d.image = q == 0 ? 0 : ranks[q - 1];
    if (d.image > d.kernel) throw ConformanceMismatch("coboundary image exceeds kernel");
    d.h = d.kernel - d.image;
    r.degrees.push_back(d);
  }
  return r;
}

}  // namespace detail

/// Matrix of the KV coboundary C^q → C^{q+1} for q ≥ 1:
///   δf(ξ) = Σ_{i=1}^{q} (−1)^i [X_i.f(∂_iξ) + f(X_1..X̂_i..X_q, X_i).X_{q+1} − f(X_i.∂_iξ)]
/// where X_i.∂_iξ lets X_i act on each remaining slot in turn. Scalar
/// coefficients keep only the last term (trivial action, no right action).
inline Matrix kv_coboundary_matrix(const BilinearProduct& a, KvCoefficients coeffs, std::size_t q) {
  if (!a.is_kv()) throw NotKV("KV coboundary needs a Koszul–Vinberg product");
  if (q == 0) throw DomainViolation("degree 0 has its own rule; use kv_coboundary_degree0");
  if (q > 4) throw DomainViolation("KV cochain degree is capped at 4");
  const std::size_t m = a.dim();
  const std::size_t w = coeffs == KvCoefficients::adjoint ? m : 1;
  const std::size_t rows = detail::ipow(m, q + 1) * w;
  const std::size_t cols = detail::ipow(m, q) * w;
  Matrix d(rows, cols);
  for (std::size_t code = 0; code < detail::ipow(m, q + 1); ++code) {
    auto xi = detail::decode(code, m, q + 1);
    for (std::size_t i = 0; i < q; ++i) {
      Rational sign = (i % 2 == 0) ? -1 : 1;  // (−1)^{i+1} with 0-based i
      std::vector<std::size_t> rest;
      for (std::size_t p = 0; p <= q; ++p)
        if (p != i) rest.push_back(xi[p]);
      if (coeffs == KvCoefficients::adjoint) {
        std::size_t src = detail::encode(rest, m);
        for (std::size_t c = 0; c < m; ++c)
          for (const auto& [l, v] : a.basis_product(xi[i], c)) d(code * w + l, src * w + c) += sign * v;
        std::vector<std::size_t> tau;
        for (std::size_t p = 0; p < q; ++p)
          if (p != i) tau.push_back(xi[p]);
        tau.push_back(xi[i]);
        std::size_t t = detail::encode(tau, m);
        for (std::size_t c = 0; c < m; ++c)
          for (const auto& [l, v] : a.basis_product(c, xi[q])) d(code * w + l, t * w + c) += sign * v;
      }
      for (std::size_t p = 0; p < rest.size(); ++p) {
        for (const auto& [k, v] : a.basis_product(xi[i], rest[p])) {
          auto moved = rest;
          moved[p] = k;
          std::size_t t = detail::encode(moved, m);
          for (std::size_t l = 0; l < w; ++l) d(code * w + l, t * w + l) -= sign * v;
        }
      }
    }
  }
  return d;
}

/// Degree-0 space of the vector complex: {ξ : X.(Y.ξ) = (X.Y).ξ}, the
/// vectors on which the coboundary below squares to zero.
inline std::vector<Vector> kv_degree0_space(const BilinearProduct& a) {
  if (!a.is_kv()) throw NotKV("KV complex needs a Koszul–Vinberg product");
  BilinearProduct p = a;
  const std::size_t m = p.dim();
  if (m == 0) return {};
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Matrix op = p.left_matrix(i) * p.left_matrix(j);
      for (const auto& [l, v] : p.basis_product(i, j)) op = op - v * p.left_matrix(l);
      ops.push_back(std::move(op));
    }
  Matrix stacked(0, m);
  for (const auto& op : ops)
    for (std::size_t r = 0; r < m; ++r) stacked.append_row(op.row(r));
  return nullspace(stacked);
}

/// δξ(X) = −X.ξ + ξ.X, as a 1-cochain.
inline Vector kv_coboundary_degree0(const BilinearProduct& a, const Vector& xi) {
  const std::size_t m = a.dim();
  Vector out(m * m);
  for (std::size_t x = 0; x < m; ++x) {
    Vector ex = unit_vector(m, x);
    Vector v = add(scaled(a.multiply(ex, xi), -1), a.multiply(xi, ex));
    for (std::size_t l = 0; l < m; ++l) out[x * m + l] = v[l];
  }
  return out;
}

/// δ applied to one cochain of degree q ≥ 1.
inline Vector kv_coboundary(const BilinearProduct& a, KvCoefficients coeffs, std::size_t q,
                            const Vector& f) {
  Matrix d = kv_coboundary_matrix(a, coeffs, q);
  if (f.size() != d.cols()) throw ShapeMismatch("cochain has the wrong size for its degree");
  return d * f;
}

inline constexpr const char* kKvVectorC0 = "C0 = {xi : X.(Y.xi) = (X.Y).xi}";
inline constexpr const char* kKvScalarC0 = "C0 = constants, trivial action, delta0 = 0";

/// dim H^q_KV for q = 0..max_degree (max_degree ≤ 3).
inline CohomologyReport kv_cohomology_dims(const BilinearProduct& a, KvCoefficients coeffs,
                                           std::size_t max_degree) {
  if (!a.is_kv()) throw NotKV("KV cohomology needs a Koszul–Vinberg product");
  if (max_degree > 3) throw DomainViolation("KV cohomology degree is capped at 3");
  const std::size_t m = a.dim();
  const std::size_t w = coeffs == KvCoefficients::adjoint ? m : 1;
  std::vector<std::size_t> dims, ranks;
  if (coeffs == KvCoefficients::adjoint) {
    auto c0 = kv_degree0_space(a);
    dims.push_back(c0.size());
    std::vector<Vector> images;
    for (const auto& xi : c0) images.push_back(kv_coboundary_degree0(a, xi));
    ranks.push_back(span_dim(images, m * m));
  } else {
    dims.push_back(1);
    ranks.push_back(0);
  }
  for (std::size_t q = 1; q <= max_degree; ++q) {
    dims.push_back(detail::ipow(m, q) * w);
    ranks.push_back(rank(kv_coboundary_matrix(a, coeffs, q)));
  }
  return detail::assemble(coeffs == KvCoefficients::adjoint ? "kv-adjoint" : "kv-scalar",
                          coeffs == KvCoefficients::adjoint ? kKvVectorC0 : kKvScalarC0, dims, ranks);
}

// Chevalley–Eilenberg ------------------------------------------------------

namespace detail {

inline std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t m, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(p);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == p) {
      out.push_back(t);
      return;
    }
    for (std::size_t x = start; x < m; ++x) {
      t[pos] = x;
      self(self, pos + 1, x + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Sorts t in place and returns the permutation sign, or 0 on a repeat.
inline int sort_sign(std::vector<std::size_t>& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return 0;
  return sign;
}

}  // namespace detail

/// Matrix of d : Λ^p L* ⊗ V → Λ^{p+1} L* ⊗ V on increasing-tuple bases:
///   dω(x_0..x_p) = Σ_i (−1)^i x_i.ω(..x̂_i..) + Σ_{i<j} (−1)^{i+j} ω([x_i,x_j], ..x̂_i..x̂_j..).
inline Matrix ce_coboundary_matrix(const LieAlgebra& lie, CeCoefficients coeffs, std::size_t p) {
  const std::size_t m = lie.dim();
  const std::size_t w = coeffs == CeCoefficients::adjoint ? m : 1;
  auto src = detail::increasing_tuples(m, p);
  auto dst = detail::increasing_tuples(m, p + 1);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t n = 0; n < src.size(); ++n) index[src[n]] = n;
  Matrix d(dst.size() * w, src.size() * w);
  for (std::size_t r = 0; r < dst.size(); ++r) {
    const auto& x = dst[r];
    for (std::size_t i = 0; i <= p; ++i) {
      if (coeffs == CeCoefficients::trivial) continue;
      std::vector<std::size_t> rest;
      for (std::size_t s = 0; s <= p; ++s)
        if (s != i) rest.push_back(x[s]);
      std::size_t c = index.at(rest);
      Rational sign = i % 2 == 0 ? 1 : -1;
      for (std::size_t k = 0; k < m; ++k)
        for (const auto& [l, v] : lie.basis_bracket(x[i], k)) d(r * w + l, c * w + k) += sign * v;
    }
    for (std::size_t i = 0; i <= p; ++i)
      for (std::size_t j = i + 1; j <= p; ++j) {
        Rational sign = (i + j) % 2 == 0 ? 1 : -1;
        for (const auto& [k, v] : lie.basis_bracket(x[i], x[j])) {
          std::vector<std::size_t> t{k};
          for (std::size_t s = 0; s <= p; ++s)
            if (s != i && s != j) t.push_back(x[s]);
          int sg = detail::sort_sign(t);
          if (sg == 0) continue;
          std::size_t c = index.at(t);
          for (std::size_t l = 0; l < w; ++l) d(r * w + l, c * w + l) += sign * sg * v;
        }
      }
  }
  return d;
}

/// Chevalley–Eilenberg cohomology dims for p = 0..max_degree (≤ 3).
inline CohomologyReport ce_cohomology_dims(const LieAlgebra& lie, CeCoefficients coeffs,
                                           std::size_t max_degree) {
  if (max_degree > 3) throw DomainViolation("CE cohomology degree is capped at 3");
  const std::size_t m = lie.dim();
  const std::size_t w = coeffs == CeCoefficients::adjoint ? m : 1;
  std::vector<std::size_t> dims, ranks;
  for (std::size_t p = 0; p <= max_degree; ++p) {
    dims.push_back(detail::increasing_tuples(m, p).size() * w);
    ranks.push_back(p + 1 > m ? 0 : rank(ce_coboundary_matrix(lie, coeffs, p)));
  }
  return detail::assemble(coeffs == CeCoefficients::adjoint ? "ce-adjoint" : "ce-trivial",
                          "C0 = coefficient module", dims, ranks);
}

// Hochschild ---------------------------------------------------------------

/// δf(a_1..a_{n+1}) = a_1 f(a_2..) + Σ_i (−1)^i f(..a_i a_{i+1}..) + (−1)^{n+1} f(a_1..a_n) a_{n+1}.
inline Matrix hochschild_coboundary_matrix(const BilinearProduct& a, std::size_t n) {
  const std::size_t m = a.dim();
  Matrix d(detail::ipow(m, n + 1) * m, detail::ipow(m, n) * m);
  for (std::size_t code = 0; code < detail::ipow(m, n + 1); ++code) {
    auto x = detail::decode(code, m, n + 1);
    {
      std::vector<std::size_t> rest(x.begin() + 1, x.end());
      std::size_t c = detail::encode(rest, m);
      for (std::size_t k = 0; k < m; ++k)
        for (const auto& [l, v] : a.basis_product(x[0], k)) d(code * m + l, c * m + k) += v;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Rational sign = (i + 1) % 2 == 0 ? 1 : -1;
      for (const auto& [k, v] : a.basis_product(x[i], x[i + 1])) {
        std::vector<std::size_t> t;
        for (std::size_t s = 0; s < i; ++s) t.push_back(x[s]);
        t.push_back(k);
        for (std::size_t s = i + 2; s <= n; ++s) t.push_back(x[s]);
        std::size_t c = detail::encode(t, m);
        for (std::size_t l = 0; l < m; ++l) d(code * m + l, c * m + l) += sign * v;
      }
    }
    {
      Rational sign = (n + 1) % 2 == 0 ? 1 : -1;
      std::vector<std::size_t> rest(x.begin(), x.end() - 1);
      std::size_t c = detail::encode(rest, m);
      for (std::size_t k = 0; k < m; ++k)
        for (const auto& [l, v] : a.basis_product(k, x[n])) d(code * m + l, c * m + k) += sign * v;
    }
  }
  return d;
}

/// HH^n(A, A) for n = 0..max_degree (≤ 2).
inline CohomologyReport hochschild_dims(const BilinearProduct& a, std::size_t max_degree = 2) {
  if (!a.is_associative()) throw NotAssociative("Hochschild cohomology needs an associative product");
  if (max_degree > 2) throw DomainViolation("Hochschild degree is capped at 2");
  const std::size_t m = a.dim();
  std::vector<std::size_t> dims, ranks;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    dims.push_back(detail::ipow(m, n) * m);
    ranks.push_back(rank(hochschild_coboundary_matrix(a, n)));
  }
  return detail::assemble("hochschild", "C0 = A", dims, ranks);
}

// Maurer–Cartan ------------------------------------------------------------

/// dB + J_B at (i, j, k, l), where dB(X,Y,Z) = Σ_cyc ([X,B(Y,Z)] + B(X,[Y,Z]))
/// and J_B(X,Y,Z) = Σ_cyc B(X,B(Y,Z)). Vanishes iff μ + B is again a Lie
/// bracket.
inline DefectTensor maurer_cartan_defect(const LieAlgebra& mu, const Table3& b) {
  const std::size_t m = mu.dim();
  if (b.dim() != m) throw ShapeMismatch("deformation and bracket differ in dimension");
  BilinearProduct bp(b);
  DefectTensor out(m, 4);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
        for (const auto& c : cyc) {
          const std::size_t x = c[0], y = c[1], z = c[2];
          for (const auto& [p, v] : bp.basis_product(y, z)) {
            for (const auto& [l, u] : mu.basis_bracket(x, p)) out(i, j, k, l) += v * u;
            for (const auto& [l, u] : bp.basis_product(x, p)) out(i, j, k, l) += v * u;
          }
          for (const auto& [p, v] : mu.basis_bracket(y, z))
            for (const auto& [l, u] : bp.basis_product(x, p)) out(i, j, k, l) += v * u;
        }
      }
  return out;
}

}  // namespace koszul

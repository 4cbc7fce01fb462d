#pragma once

// The affine algebra of the flat model, the dimension tower built from it,
// geometric completeness of associative algebras, and simple right ideals.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "koszul/algebra.hpp"
#include "koszul/errors.hpp"
#include "koszul/linalg.hpp"
#include "koszul/rational.hpp"

namespace koszul {

/// Pairs (A, a) with A an m×m matrix and a ∈ ℝ^m, multiplied by
/// (A,a)·(B,b) = (BA, Ba): the composition ∇_X Y of affine fields
/// X = Ax + a, Y = Bx + b on flat ℝ^m. Coordinates: A(r,c) at r·m + c,
/// a_r at m² + r.
inline BilinearProduct affine_algebra(std::size_t m) {
  const std::size_t n = m * m + m;
  Table3 t(n);
  auto mat = [m](std::size_t r, std::size_t c) { return r * m + c; };
  auto vec = [m](std::size_t r) { return m * m + r; };
  // E_{rc}·E_{st} = E_{st}E_{rc} = δ_{tr} E_{sc};  E_{rc}·f_s = 0;
  // f_r·E_{st} = E_{st} f_r = δ_{tr} f_s;  f_r·f_s = 0.
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t s = 0; s < m; ++s) t(mat(r, c), mat(s, r), mat(s, c)) = 1;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) t(vec(r), mat(s, r), vec(s)) = 1;
  return BilinearProduct(std::move(t));
}

struct TowerLevel {
  std::size_t level = 0;
  std::size_t dim = 0;
  /// Level 0 is the zero product on ℝ^m; level t ≥ 1 is the affine algebra
  /// of level t − 1. Only materialized while dim ≤ kTowerMaterializeCap.
  std::optional<BilinearProduct> algebra;
};

inline constexpr std::size_t kTowerMaterializeCap = 64;

struct TowerReport {
  std::vector<std::size_t> dims;
  std::vector<TowerLevel> levels;
};

/// d_0 = m, d_{t+1} = d_t² + d_t, for the geodesically complete model.
inline TowerReport tower_dims(std::size_t m, std::size_t steps, bool materialize = true) {
  if (steps > 3) throw DomainViolation("tower depth is capped at 3 steps");
  TowerReport out;
  std::size_t d = m;
  for (std::size_t t = 0; t <= steps; ++t) {
    if (t > 0) d = d * d + d;
    out.dims.push_back(d);
    TowerLevel level{t, d, std::nullopt};
    if (materialize && d <= kTowerMaterializeCap)
      level.algebra = t == 0 ? BilinearProduct(m) : affine_algebra(out.dims[t - 1]);
    out.levels.push_back(std::move(level));
  }
  return out;
}

enum class Completeness { complete, incomplete, unknown };

inline std::string to_string(Completeness c) {
  switch (c) {
    case Completeness::complete: return "complete";
    case Completeness::incomplete: return "incomplete";
    case Completeness::unknown: return "unknown";
  }
  return "unknown";
}

struct CompletenessVerdict {
  Completeness verdict = Completeness::unknown;
  /// "nilpotent-right-multiplications", "closed-form", "sampling" or "none".
  std::string method;
  /// a* with det(I + R_{a*}) = 0, when one is rational.
  std::optional<Vector> witness;
  std::string certificate;
};

namespace detail {

/// Coefficients c_0..c_n of det(λI − A), c_n = 1 (Faddeev–LeVerrier).
inline std::vector<Rational> characteristic_polynomial(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = a * mk;
    for (std::size_t d = 0; d < n; ++d) next(d, d) += c[n - k + 1];
    mk = std::move(next);
    Matrix am = a * mk;
    Rational tr = 0;
    for (std::size_t d = 0; d < n; ++d) tr += am(d, d);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

inline Rational eval_poly(const std::vector<Rational>& c, const Rational& x) {
  Rational v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

/// Nonzero rational roots of a polynomial with rational coefficients.
inline std::vector<Rational> nonzero_rational_roots(std::vector<Rational> c) {
  while (!c.empty() && c.front() == 0) c.erase(c.begin());
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.size() < 2) return {};
  mpz_class den = 1;
  for (const auto& x : c) den = lcm(den, mpz_class(x.get_den()));
  std::vector<mpz_class> z;
  for (const auto& x : c) z.push_back(mpz_class(x * Rational(den)));
  auto divisors = [](mpz_class v) {
    std::vector<mpz_class> d;
    v = abs(v);
    if (v > mpz_class("1000000000000")) return d;  // too large to factor naively
    for (mpz_class k = 1; k * k <= v; ++k)
      if (v % k == 0) {
        d.push_back(k);
        if (k * k != v) d.push_back(v / k);
      }
    return d;
  };
  std::vector<Rational> roots;
  for (const auto& p : divisors(z.front()))
    for (const auto& q : divisors(z.back()))
      for (int s : {1, -1}) {
        Rational r(p * s, q);
        r.canonicalize();
        if (eval_poly(c, r) == 0) {
          bool seen = false;
          for (const auto& x : roots) seen = seen || x == r;
          if (!seen) roots.push_back(r);
        }
      }
  return roots;
}

/// True when every product of `m` right multiplications vanishes, i.e. the
/// algebra generated by the R_{e_j} is nilpotent.
inline bool right_multiplications_nilpotent(const BilinearProduct& a) {
  const std::size_t m = a.dim();
  std::vector<Matrix> rs;
  for (std::size_t j = 0; j < m; ++j) rs.push_back(a.right_matrix(j));
  std::vector<Vector> span;
  for (const auto& r : rs) span.push_back(r.flat());
  span = row_basis(span, m * m);
  for (std::size_t step = 0; step < m && !span.empty(); ++step) {
    std::vector<Vector> next;
    for (const auto& r : rs)
      for (const auto& s : span) next.push_back((r * Matrix::square_from_flat(s, m)).flat());
    span = row_basis(next, m * m);
  }
  return span.empty();
}

inline bool singular_shift(const BilinearProduct& a, const Vector& x) {
  Matrix r = a.right_matrix(x);
  for (std::size_t d = 0; d < r.rows(); ++d) r(d, d) += 1;
  return determinant(r) == 0;
}

}  // namespace detail

/// Geometric completeness: ψ_{a*}(a) = a·a* + a is injective for every a*,
/// i.e. no right multiplication has eigenvalue −1. Since R_{ta*} = tR_{a*},
/// the algebra is incomplete iff some R_{a*} has a nonzero real eigenvalue.
inline CompletenessVerdict geometric_completeness(const BilinearProduct& a, std::size_t samples = 256,
                                                  std::uint64_t seed = 24301) {
  if (!a.is_associative()) throw NotAssociative("geometric completeness needs an associative product");
  const std::size_t m = a.dim();
  CompletenessVerdict out;
  if (detail::right_multiplications_nilpotent(a)) {
    out.verdict = Completeness::complete;
    out.method = "nilpotent-right-multiplications";
    out.certificate = "every R_a is nilpotent, so det(I + R_a) = 1";
    return out;
  }
  auto exact_witness = [&](const Vector& x, const Rational& lambda, const char* method) {
    out.verdict = Completeness::incomplete;
    out.method = method;
    out.witness = scaled(x, Rational(-1) / lambda);
    if (!detail::singular_shift(a, *out.witness))
      throw ConformanceMismatch("completeness witness fails det(I + R) = 0");
    out.certificate = "det(I + R_a*) = 0";
    return out;
  };
  if (m == 1) {
    Rational r = a(0, 0, 0);
    return exact_witness(unit_vector(1, 0), r, "closed-form");
  }
  if (m == 2) {
    // R(x) = x₀R₀ + x₁R₁: trace τ(x) is linear, det δ(x) and the
    // discriminant Δ = τ² − 4δ are quadratic forms.
    Matrix r0 = a.right_matrix(0), r1 = a.right_matrix(1);
    Rational t0 = r0(0, 0) + r0(1, 1), t1 = r1(0, 0) + r1(1, 1);
    auto det_form = [&](const Vector& x) { return determinant(a.right_matrix(x)); };
    Rational d00 = det_form({1, 0}), d11 = det_form({0, 1});
    Rational d01 = (det_form({1, 1}) - d00 - d11);  // coefficient of x₀x₁
    Rational p = t0 * t0 - 4 * d00, q = 2 * t0 * t1 - 4 * d01, r = t1 * t1 - 4 * d11;
    std::optional<Vector> positive;
    if (p > 0) positive = Vector{1, 0};
    else if (r > 0) positive = Vector{0, 1};
    else if (q * q - 4 * p * r > 0) positive = p != 0 ? Vector{-q / (2 * p), 1} : Vector{(1 - r) / q, 1};
    if (positive) {
      // Distinct real eigenvalues (τ ± √Δ)/2, not both zero.
      Matrix rx = a.right_matrix(*positive);
      for (const auto& lambda : detail::nonzero_rational_roots(detail::characteristic_polynomial(rx)))
        return exact_witness(*positive, lambda, "closed-form");
      out.verdict = Completeness::incomplete;
      out.method = "closed-form";
      out.certificate = "R_a has distinct real eigenvalues at a = [" + to_string((*positive)[0]) + "," +
                        to_string((*positive)[1]) + "]";
      return out;
    }
    // Δ ≤ 0: real spectra only on ker Δ, where the eigenvalue is τ/2.
    std::vector<Vector> dirs;
    if (p == 0 && q == 0 && r == 0) {
      dirs = {{1, 0}, {0, 1}};
    } else if (q * q - 4 * p * r == 0) {
      dirs = {p != 0 ? Vector{-q / (2 * p), 1} : Vector{1, 0}};
    }
    for (const auto& v : dirs) {
      Rational tau = v[0] * t0 + v[1] * t1;
      if (tau != 0) return exact_witness(v, tau / 2, "closed-form");
    }
    out.verdict = Completeness::complete;
    out.method = "closed-form";
    out.certificate = "no nonzero real eigenvalue of any R_a";
    return out;
  }
  for (std::size_t s = 0; s < samples; ++s) {
    std::mt19937_64 rng(derive_seed(seed, s));
    Vector x(m);
    for (auto& v : x) v = random_small(rng, -3, 3);
    if (is_zero(x)) continue;
    auto roots = detail::nonzero_rational_roots(detail::characteristic_polynomial(a.right_matrix(x)));
    if (!roots.empty()) return exact_witness(x, roots.front(), "sampling");
  }
  out.verdict = Completeness::unknown;
  out.method = "none";
  return out;
}

struct RightIdealReport {
  /// Basis of the largest two-sided ideal of A contained in I.
  std::vector<Vector> core;
  bool simple = false;
  /// (I, A) with I a simple right ideal.
  bool effective_pair = false;
};

/// Checks I·A ⊆ I, then shrinks J ← {x ∈ J : A·x ⊆ J, x·A ⊆ J} from J = I.
inline RightIdealReport simple_right_ideal_check(const BilinearProduct& a, const std::vector<Vector>& ideal) {
  if (!a.is_associative()) throw NotAssociative("right ideals need an associative product");
  const std::size_t m = a.dim();
  for (const auto& v : ideal)
    if (v.size() != m) throw ShapeMismatch("ideal basis vector has the wrong length");
  std::vector<Vector> basis = ideal.empty() ? ideal : row_basis(ideal, m);
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t k = 0; k < m; ++k)
      if (!in_span(basis, a.multiply(basis[b], unit_vector(m, k)), m))
        throw NotRightIdeal(b, k, "I·A is not contained in I");
  std::vector<Vector> j = basis;
  while (!j.empty()) {
    auto ann = nullspace(Matrix::from_rows(j, m));
    if (ann.empty()) break;  // J is everything
    Matrix cons(0, j.size());
    for (std::size_t k = 0; k < m; ++k) {
      Vector ek = unit_vector(m, k);
      std::vector<Vector> left, right;
      for (const auto& x : j) {
        left.push_back(a.multiply(ek, x));
        right.push_back(a.multiply(x, ek));
      }
      for (const auto& y : ann) {
        Vector rl(j.size()), rr(j.size());
        for (std::size_t c = 0; c < j.size(); ++c) {
          for (std::size_t d = 0; d < m; ++d) {
            rl[c] += y[d] * left[c][d];
            rr[c] += y[d] * right[c][d];
          }
        }
        cons.append_row(rl);
        cons.append_row(rr);
      }
    }
    auto kernel = nullspace(cons);
    if (kernel.size() == j.size()) break;
    std::vector<Vector> next;
    for (const auto& x : kernel) next.push_back(combine(j, x, m));
    j = std::move(next);
  }
  RightIdealReport out;
  out.core = j;
  out.simple = j.empty();
  out.effective_pair = out.simple;
  return out;
}

}  // namespace koszul

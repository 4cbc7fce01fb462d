#pragma once

// Numerical invariants (r^b defect, Hessian defect, s^b, s^b_+, s^{*b}) and
// existence verdicts with witnesses.
//
// Every minimum over a gauge solution φ is exact: the φ ranging over a
// computed solution space is a linear family of matrices, and the minimum of
// dim − rank is dim minus the generic rank of that family. Minima over
// connections and metrics are searched over candidates and reported as
// upper bounds.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "koszul/algebra.hpp"
#include "koszul/connection.hpp"
#include "koszul/errors.hpp"
#include "koszul/forms.hpp"
#include "koszul/gauge.hpp"
#include "koszul/linalg.hpp"

namespace koszul {

inline constexpr std::uint64_t kDefaultSeed = 24301;

enum class RankConstraint { none, positive_definite };

struct RankWitness {
  std::size_t max_rank = 0;
  Vector coefficients;  // over the space's basis
  Matrix element;
  /// "exhaustive" or "randomized".
  std::string method;
  std::size_t samples = 0;
  /// For RankConstraint::positive_definite: a positive definite element was
  /// found; `element` is then that element.
  bool constraint_satisfied = false;
};

namespace detail {

inline constexpr std::size_t kExhaustiveMaxDim = 3;
inline constexpr long kGridRadius = 2;
inline constexpr std::size_t kRandomSamples = 64;

inline Matrix element_of(const LinearSolutionSpace& space, const Vector& coeffs) {
  return Matrix::square_from_flat(combine(space.basis, coeffs, space.ambient_size()), space.m);
}

}  // namespace detail

/// Generic (maximal) rank over a space of endomorphisms or forms. Spaces of
/// dimension ≤ 3 are scanned on the full coefficient grid {−2..2}^d; larger
/// ones use 64 seeded rational samples (coefficients in [−10,10], denominator
/// ≤ 16). Generic rank is attained off a measure-zero set.
inline RankWitness max_rank(const LinearSolutionSpace& space, RankConstraint constraint,
                            std::uint64_t seed = kDefaultSeed) {
  const std::size_t d = space.dim();
  RankWitness best;
  best.element = Matrix(space.m, space.m);
  best.coefficients = Vector(d);
  auto consider = [&](const Vector& coeffs) {
    Matrix e = detail::element_of(space, coeffs);
    std::size_t r = rank(e);
    ++best.samples;
    if (constraint == RankConstraint::positive_definite) {
      if (best.constraint_satisfied) return;
      if (r == space.m && space.m > 0 && is_positive_definite(e)) {
        best.constraint_satisfied = true;
        best.max_rank = r;
        best.coefficients = coeffs;
        best.element = std::move(e);
        return;
      }
    }
    if (r > best.max_rank || (best.samples == 1 && r == 0)) {
      if (r > best.max_rank) {
        best.max_rank = r;
        best.coefficients = coeffs;
        best.element = std::move(e);
      }
    }
  };
  if (d == 0) {
    best.method = "exhaustive";
    best.constraint_satisfied = space.m == 0;
    return best;
  }
  if (d <= detail::kExhaustiveMaxDim) {
    best.method = "exhaustive";
    const long side = 2 * detail::kGridRadius + 1;
    std::size_t total = 1;
    for (std::size_t b = 0; b < d; ++b) total *= side;
    for (std::size_t n = 0; n < total; ++n) {
      Vector coeffs(d);
      std::size_t rest = n;
      for (std::size_t b = 0; b < d; ++b) {
        coeffs[b] = static_cast<long>(rest % side) - detail::kGridRadius;
        rest /= side;
      }
      consider(coeffs);
    }
  } else {
    best.method = "randomized";
    for (std::size_t s = 0; s < detail::kRandomSamples; ++s) {
      std::mt19937_64 rng(derive_seed(seed, s));
      Vector coeffs(d);
      for (auto& c : coeffs) c = random_rational(rng, 10, 16);
      consider(coeffs);
    }
  }
  return best;
}

enum class Existence { yes, no, unknown };

inline std::string to_string(Existence e) {
  switch (e) {
    case Existence::yes: return "yes";
    case Existence::no: return "no";
    case Existence::unknown: return "unknown";
  }
  return "unknown";
}

struct ExistenceVerdict {
  Existence exists = Existence::unknown;
  /// The invariant (a defect or gap); an upper bound when `exists` is unknown.
  long invariant_value = 0;
  std::string notes;
  /// Certificate for `no`, or witness description for `yes`.
  std::string certificate;
  std::optional<Matrix> witness_form;
  std::optional<Matrix> witness_endomorphism;
  std::optional<InvariantConnection> witness_connection;
};

namespace detail {

/// Nonzero vector killed by every basis element, if any.
inline std::optional<Vector> common_kernel(const LinearSolutionSpace& space) {
  const std::size_t m = space.m;
  if (m == 0) return std::nullopt;
  Matrix stacked(0, m);
  for (std::size_t b = 0; b < space.dim(); ++b) {
    Matrix e = space.element_matrix(b);
    for (std::size_t r = 0; r < m; ++r) stacked.append_row(e.row(r));
  }
  if (stacked.rows() == 0) return unit_vector(m, 0);
  auto ker = nullspace(stacked);
  if (ker.empty()) return std::nullopt;
  return ker.front();
}

/// Decides "every element is singular" exactly where possible: a common
/// kernel vector, or the full coefficient grid when its side exceeds the
/// determinant degree (a nonzero polynomial of degree ≤ m in each variable
/// cannot vanish on a grid with more than m points per axis).
inline std::optional<std::string> singularity_certificate(const LinearSolutionSpace& space,
                                                          const RankWitness& w) {
  if (auto v = common_kernel(space)) {
    std::string s = "common-kernel:[";
    for (std::size_t i = 0; i < v->size(); ++i) s += (i ? "," : "") + to_string((*v)[i]);
    return s + "]";
  }
  if (w.method == "exhaustive" && space.m < static_cast<std::size_t>(2 * kGridRadius + 1))
    return "exhaustive-grid:side=" + std::to_string(2 * kGridRadius + 1) +
           ",degree=" + std::to_string(space.m);
  return std::nullopt;
}

inline ExistenceVerdict rank_verdict(const LinearSolutionSpace& space, const RankWitness& w,
                                     const char* witness_name) {
  ExistenceVerdict v;
  v.invariant_value = static_cast<long>(space.m) - static_cast<long>(w.max_rank);
  if (w.max_rank == space.m) {
    v.exists = Existence::yes;
    v.certificate = std::string(witness_name) + " of full rank";
    v.witness_form = w.element;
  } else if (auto cert = singularity_certificate(space, w)) {
    v.exists = Existence::no;
    v.certificate = *cert;
  } else {
    v.exists = Existence::unknown;
    v.notes = "rank search found no full-rank element; value is an upper bound";
  }
  return v;
}

/// Span of {form(φ) : φ ∈ space} as an independent basis of forms.
template <class FormMap>
LinearSolutionSpace map_to_forms(const LinearSolutionSpace& endos, Symmetry sym, FormMap&& f) {
  std::vector<Vector> forms;
  for (std::size_t b = 0; b < endos.dim(); ++b) forms.push_back(f(endos.element_matrix(b)).flat());
  LinearSolutionSpace out{Ambient::forms, endos.m, sym, {}};
  out.basis = forms.empty() ? std::vector<Vector>{} : row_basis(forms, endos.m * endos.m);
  return out;
}

}  // namespace detail

/// m − r_b(∇): zero exactly when FE*(∇) has full pointwise rank.
inline long r_b_defect(const InvariantConnection& conn) {
  return static_cast<long>(conn.dim()) - static_cast<long>(solve_fe_star(conn).r_b);
}

/// A locally flat connection on a Lie algebra of dimension ≤ 2. Every such
/// algebra is abelian or has a basis (x, y) with [x,y] = y, where x·y = y is
/// a KV product.
inline InvariantConnection low_dim_flat_structure(const LieAlgebra& lie) {
  const std::size_t m = lie.dim();
  if (m > 2) throw Unsupported("closed-form flat structure only for dim ≤ 2");
  if (lie.is_abelian()) return InvariantConnection(lie, BilinearProduct(m));
  Vector y(2);
  for (const auto& [k, v] : lie.basis_bracket(0, 1)) y[k] = v;
  Vector x(2);
  Vector ad0y = lie.bracket(unit_vector(2, 0), y);
  Vector ad1y = lie.bracket(unit_vector(2, 1), y);
  // The derived algebra is the line through y, so [e_i, y] = λ_i y.
  auto ratio = [&](const Vector& w) {
    for (std::size_t k = 0; k < 2; ++k)
      if (y[k] != 0) return Rational(w[k] / y[k]);
    return Rational(0);
  };
  Rational l0 = ratio(ad0y), l1 = ratio(ad1y);
  if (l0 != 0)
    x = scaled(unit_vector(2, 0), 1 / l0);
  else
    x = scaled(unit_vector(2, 1), 1 / l1);
  Matrix p(2, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    p(k, 0) = x[k];
    p(k, 1) = y[k];
  }
  Table3 in_xy(2);
  in_xy(0, 1, 1) = 1;  // x·y = y
  auto pinv = inverse(p);
  Table3 gamma = change_basis(in_xy, *pinv);
  InvariantConnection conn(lie, BilinearProduct(std::move(gamma)));
  if (!is_locally_flat(conn).flat)
    throw ConformanceMismatch("closed-form flat structure failed its flatness check");
  return conn;
}

struct FlatSearchOptions {
  std::size_t budget = 64;
  std::uint64_t seed = kDefaultSeed;
};

/// Searches for a left-invariant locally flat structure: the supplied
/// candidates, ∇⁰, and `budget` random torsion-free connections ½c + S with
/// small symmetric S. Dimensions ≤ 2 are settled in closed form.
inline ExistenceVerdict flat_existence(const LieAlgebra& lie,
                                       const std::vector<InvariantConnection>& candidates,
                                       const FlatSearchOptions& opts = {}) {
  const std::size_t m = lie.dim();
  for (const auto& c : candidates) {
    if (!(c.base() == lie)) throw TorsionMismatch("candidate connection is over a different algebra");
    if (auto idx = torsion(c).first_nonzero())
      throw TorsionMismatch("candidate commutator differs from the bracket at (" +
                            std::to_string((*idx)[0]) + "," + std::to_string((*idx)[1]) + "," +
                            std::to_string((*idx)[2]) + ")");
  }
  ExistenceVerdict v;
  long best = static_cast<long>(m);
  auto accept = [&](const InvariantConnection& c, const std::string& how) {
    v.exists = Existence::yes;
    v.invariant_value = 0;
    v.certificate = how;
    v.witness_connection = c;
    return v;
  };
  for (const auto& c : candidates) {
    if (is_locally_flat(c).flat) return accept(c, "candidate is locally flat");
    best = std::min(best, r_b_defect(c));
  }
  if (m <= 2) return accept(low_dim_flat_structure(lie), "closed form for dim <= 2");
  auto zero = cartan_connection(lie, CartanKind::zero);
  if (is_locally_flat(zero).flat) return accept(zero, "Cartan 0-connection is flat");
  best = std::min(best, r_b_defect(zero));
  for (std::size_t t = 0; t < opts.budget; ++t) {
    std::mt19937_64 rng(derive_seed(opts.seed, t));
    std::uniform_int_distribution<int> pick(0, 5);
    Table3 gamma = Rational(1, 2) * lie.table();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
          int r = pick(rng);
          Rational s = r == 0 ? Rational(1) : r == 1 ? Rational(-1) : r == 2 ? Rational(1, 2) : Rational(0);
          gamma(i, j, k) += s;
          if (i != j) gamma(j, i, k) += s;
        }
    InvariantConnection c(lie, BilinearProduct(std::move(gamma)));
    if (is_locally_flat(c).flat) return accept(c, "random torsion-free search");
    best = std::min(best, r_b_defect(c));
  }
  v.exists = Existence::unknown;
  v.invariant_value = best;
  v.notes = "no flat structure among candidates and " + std::to_string(opts.budget) +
            " random torsion-free connections; value is the best r_b defect found";
  return v;
}

/// Symmetric g with −g([e_i,e_j],e_k) − g(e_j,∇_{e_i}e_k) + g(e_i,∇_{e_j}e_k) = 0,
/// the Hessian (degree-2 scalar KV cocycle) condition.
inline LinearSolutionSpace hessian_cocycle_space(const InvariantConnection& conn) {
  if (!is_locally_flat(conn).flat) throw NotFlat("Hessian cocycles need a locally flat connection");
  const std::size_t m = conn.dim();
  auto apply = [&](const Vector& flat) {
    Matrix g = Matrix::square_from_flat(flat, m);
    Vector out;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
          Rational s = 0;
          for (const auto& [l, c] : conn.base().basis_bracket(i, j)) s -= c * g(l, k);
          for (const auto& [l, c] : conn.product().basis_product(i, k)) s -= c * g(j, l);
          for (const auto& [l, c] : conn.product().basis_product(j, k)) s += c * g(i, l);
          out.push_back(s);
        }
    return out;
  };
  LinearSolutionSpace space{Ambient::forms, m, Symmetry::symmetric, {}};
  auto params = detail::form_parameters(m, Symmetry::symmetric);
  if (m < 2) {
    space.basis = params;
  } else {
    space.basis = detail::solve_in_span(params, m * m, apply);
  }
  detail::verify_solutions(space.basis, apply, "Hessian cocycles");
  return space;
}

struct HessianDefect {
  long defect = 0;
  ExistenceVerdict verdict;
  LinearSolutionSpace cocycles;
};

inline HessianDefect hessian_defect(const InvariantConnection& conn,
                                    std::uint64_t seed = kDefaultSeed) {
  HessianDefect out;
  out.cocycles = hessian_cocycle_space(conn);
  auto w = max_rank(out.cocycles, RankConstraint::none, seed);
  out.verdict = detail::rank_verdict(out.cocycles, w, "Hessian cocycle");
  out.defect = static_cast<long>(conn.dim()) - static_cast<long>(w.max_rank);
  return out;
}

struct SbResult {
  long value = 0;
  ExistenceVerdict verdict;
  /// Forms g(Φ·,·) for Φ ranging over the symmetric parts of M(∇⁺,∇^{+g}).
  LinearSolutionSpace forms;
  RankWitness witness;
};

/// s^b(G,g) (or s^b_+(G,g) when `positive`) from the gauge equation of the
/// Cartan +connection and its g-dual.
inline SbResult s_b(const LieAlgebra& lie, const BilinearForm& g, bool positive,
                    std::uint64_t seed = kDefaultSeed) {
  if (!g.matrix().is_symmetric() || !g.is_nondegenerate())
    throw SingularMetric("s_b needs a nondegenerate symmetric metric");
  auto plus = cartan_connection(lie, CartanKind::plus);
  auto dual = amari_dual(plus, g);
  auto sol = solve_gauge_equation(plus, dual);
  SbResult out;
  out.forms = detail::map_to_forms(sol, Symmetry::symmetric, [&](const Matrix& phi) {
    return form_of(phi_split(phi, g).sym, g);
  });
  out.witness = max_rank(out.forms, positive ? RankConstraint::positive_definite : RankConstraint::none,
                         seed);
  if (!positive) {
    out.verdict = detail::rank_verdict(out.forms, out.witness, "symmetric gauge part");
    out.value = out.verdict.invariant_value;
  } else {
    ExistenceVerdict v;
    if (out.witness.constraint_satisfied) {
      v.exists = Existence::yes;
      v.invariant_value = 0;
      v.witness_form = out.witness.element;
      v.certificate = "positive definite g(Phi.,.)";
    } else {
      auto plain = max_rank(out.forms, RankConstraint::none, seed);
      auto base = detail::rank_verdict(out.forms, plain, "symmetric gauge part");
      if (base.exists == Existence::no) {
        v = base;
      } else {
        v.exists = Existence::unknown;
        v.invariant_value = static_cast<long>(lie.dim());
        v.notes = "no positive definite element found by the search";
      }
    }
    out.verdict = v;
    out.value = v.invariant_value;
  }
  if (out.verdict.witness_form) {
    auto ginv = inverse(g.matrix());
    // Φ = G⁻¹ Bᵀ for the witness form B
    out.verdict.witness_endomorphism = (*ginv) * out.verdict.witness_form->transpose();
  }
  return out;
}

/// Symmetric forms with g([x,y],z) + g(y,[x,z]) = 0, solved directly from
/// the structure constants.
inline LinearSolutionSpace ad_invariant_forms(const LieAlgebra& lie, Symmetry sym) {
  const std::size_t m = lie.dim();
  auto apply = [&](const Vector& flat) {
    Vector out;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
          Rational s = 0;
          for (const auto& [l, c] : lie.basis_bracket(i, j)) s += c * flat[l * m + k];
          for (const auto& [l, c] : lie.basis_bracket(i, k)) s += c * flat[j * m + l];
          out.push_back(s);
        }
    return out;
  };
  LinearSolutionSpace space{Ambient::forms, m, sym, {}};
  auto params = detail::form_parameters(m, sym);
  space.basis = m == 0 ? params : detail::solve_in_span(params, m * m, apply);
  detail::verify_solutions(space.basis, apply, "ad-invariant forms");
  return space;
}

/// Existence of a bi-invariant (nondegenerate, ad-invariant) metric. The
/// Killing form is preferred as witness when it is nondegenerate.
inline ExistenceVerdict bi_invariant_metric(const LieAlgebra& lie, std::uint64_t seed = kDefaultSeed) {
  auto space = ad_invariant_forms(lie, Symmetry::symmetric);
  auto killing = killing_form(lie);
  if (killing.is_nondegenerate()) {
    ExistenceVerdict v;
    v.exists = Existence::yes;
    v.invariant_value = 0;
    v.certificate = "killing";
    v.witness_form = killing.matrix();
    return v;
  }
  auto w = max_rank(space, RankConstraint::none, seed);
  auto v = detail::rank_verdict(space, w, "ad-invariant form");
  if (v.exists == Existence::yes && lie.is_abelian() && space.dim() > 0) {
    v.witness_form = Matrix::identity(lie.dim());
    v.certificate = "identity";
  }
  return v;
}

struct SStarOptions {
  bool require_torsion_free = true;
  std::uint64_t seed = kDefaultSeed;
};

struct SStarResult {
  long value = 0;
  ExistenceVerdict verdict;
  LinearSolutionSpace forms;
};

/// s^{*b}(∇,g): m minus the generic rank of the skew parts Φ* over
/// M(∇,∇^g). A full-rank witness ω(x,y) = g(Φ*x,y) is a ∇-parallel
/// symplectic form.
inline SStarResult s_star_b(const InvariantConnection& conn, const BilinearForm& g,
                            const SStarOptions& opts = {}) {
  if (opts.require_torsion_free && !is_torsion_free(conn))
    throw NotTorsionFree("s_star_b requires a torsion-free connection");
  if (!g.matrix().is_symmetric() || !g.is_nondegenerate())
    throw SingularMetric("s_star_b needs a nondegenerate symmetric metric");
  auto dual = amari_dual(conn, g);
  auto sol = solve_gauge_equation(conn, dual);
  SStarResult out;
  out.forms = detail::map_to_forms(sol, Symmetry::skew, [&](const Matrix& phi) {
    return form_of(phi_split(phi, g).skew, g);
  });
  auto w = max_rank(out.forms, RankConstraint::none, opts.seed);
  out.verdict = detail::rank_verdict(out.forms, w, "parallel skew form");
  if (out.verdict.exists != Existence::yes && conn.dim() % 2 == 1) {
    out.verdict.exists = Existence::no;
    out.verdict.certificate = "odd dimension: skew forms are singular";
  }
  out.value = out.verdict.invariant_value;
  return out;
}

/// Skew forms satisfying the Chevalley–Eilenberg 2-cocycle condition
/// Σ_cyclic ω([x,y],z) = 0.
inline LinearSolutionSpace closed_two_forms(const LieAlgebra& lie) {
  const std::size_t m = lie.dim();
  auto apply = [&](const Vector& w) {
    Vector out;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          Rational s = 0;
          for (const auto& [l, c] : lie.basis_bracket(i, j)) s += c * w[l * m + k];
          for (const auto& [l, c] : lie.basis_bracket(j, k)) s += c * w[l * m + i];
          for (const auto& [l, c] : lie.basis_bracket(k, i)) s += c * w[l * m + j];
          out.push_back(s);
        }
    return out;
  };
  LinearSolutionSpace space{Ambient::forms, m, Symmetry::skew, {}};
  auto params = detail::form_parameters(m, Symmetry::skew);
  space.basis = m < 3 ? params : detail::solve_in_span(params, m * m, apply);
  if (m >= 3) detail::verify_solutions(space.basis, apply, "closed 2-forms");
  return space;
}

/// Left-invariant symplectic structure: a closed nondegenerate 2-form.
inline ExistenceVerdict left_symplectic_oracle(const LieAlgebra& lie, std::uint64_t seed = kDefaultSeed) {
  const std::size_t m = lie.dim();
  if (m % 2 == 1) {
    ExistenceVerdict v;
    v.exists = Existence::no;
    v.invariant_value = 1;
    v.certificate = "odd dimension: skew forms are singular";
    return v;
  }
  auto space = closed_two_forms(lie);
  auto w = max_rank(space, RankConstraint::none, seed);
  return detail::rank_verdict(space, w, "closed 2-form");
}

/// A torsion-free connection ½c + S (S symmetric) with ∇ω = 0, or nullopt
/// when none exists. Used to realize the s^{*b} route for symplectic
/// algebras.
inline std::optional<InvariantConnection> symplectic_connection(const LieAlgebra& lie,
                                                                const BilinearForm& omega) {
  const std::size_t m = lie.dim();
  // Unknowns S^k_{ij}, i ≤ j.
  std::vector<std::array<std::size_t, 3>> idx;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) idx.push_back({i, j, k});
  auto gamma_of = [&](const Vector& s, bool with_base) {
    Table3 t = with_base ? Rational(1, 2) * lie.table() : Table3(m);
    for (std::size_t n = 0; n < idx.size(); ++n) {
      auto [i, j, k] = idx[n];
      t(i, j, k) += s[n];
      if (i != j) t(j, i, k) += s[n];
    }
    return t;
  };
  auto residual = [&](const Table3& t) {
    InvariantConnection c(lie, BilinearProduct(t));
    Vector out;
    for (std::size_t i = 0; i < m; ++i) {
      Matrix gi = c.gamma_matrix(i);
      Matrix d = gi.transpose() * omega.matrix() + omega.matrix() * gi;
      out.insert(out.end(), d.flat().begin(), d.flat().end());
    }
    return out;
  };
  Vector rhs = residual(gamma_of(Vector(idx.size()), true));
  Matrix a(rhs.size(), idx.size());
  for (std::size_t n = 0; n < idx.size(); ++n) {
    Vector col = residual(gamma_of(unit_vector(idx.size(), n), false));
    for (std::size_t r = 0; r < rhs.size(); ++r) a(r, n) = col[r];
  }
  auto s = solve(a, scaled(rhs, -1));
  if (!s) return std::nullopt;
  InvariantConnection conn(lie, BilinearProduct(gamma_of(*s, true)));
  if (!is_torsion_free(conn) || !is_parallel(omega, conn))
    throw ConformanceMismatch("symplectic connection failed re-verification");
  return conn;
}

}  // namespace koszul

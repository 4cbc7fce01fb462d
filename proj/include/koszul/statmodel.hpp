#pragma once

// Information geometry of parametric families on a finite sample space:
// Fisher metric, the α-family of connections, their curvature, and a
// numerical flatness probe. Everything here is floating point.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/errors.hpp"

namespace koszul::stat {

using Point = std::vector<double>;

/// log p(θ, x) for x in {0..N−1}, with a box domain and an optional
/// analytic score ∂_i log p(θ, x).
struct FiniteStatModel {
  std::string family;
  std::size_t n_outcomes = 0;
  std::size_t n_params = 0;
  std::function<double(const Point&, std::size_t)> log_density;
  std::vector<std::pair<double, double>> box;  // open interval per parameter
  /// Extra domain condition beyond the box (e.g. the simplex), optional.
  std::function<bool(const Point&)> admissible;
  std::function<std::vector<double>(const Point&, std::size_t)> analytic_score;
};

inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kScoreStep = 1e-4;
inline constexpr double kSecondStep = 1e-3;
inline constexpr double kCurvatureStep = 1e-3;

/// Throws DomainViolation outside the domain and NonNormalized when the
/// probabilities do not sum to one.
inline std::vector<double> probabilities(const FiniteStatModel& m, const Point& theta) {
  if (theta.size() != m.n_params) throw DomainViolation("parameter vector has the wrong length");
  for (std::size_t i = 0; i < m.n_params; ++i)
    if (!(theta[i] > m.box[i].first && theta[i] < m.box[i].second))
      throw DomainViolation("theta[" + std::to_string(i) + "] is outside the parameter box");
  if (m.admissible && !m.admissible(theta)) throw DomainViolation("theta is outside the model domain");
  std::vector<double> p(m.n_outcomes);
  double total = 0;
  for (std::size_t x = 0; x < m.n_outcomes; ++x) {
    p[x] = std::exp(m.log_density(theta, x));
    if (!(p[x] > 0)) throw DomainViolation("probability is not positive at theta");
    total += p[x];
  }
  if (std::abs(total - 1.0) > kNormalizationTol)
    throw NonNormalized("probabilities sum to " + std::to_string(total));
  return p;
}

namespace detail {

inline Point shifted(Point t, std::size_t i, double h) {
  t[i] += h;
  return t;
}

template <class F>
double richardson(F&& central, double h) {
  return (4.0 * central(h / 2) - central(h)) / 3.0;
}

}  // namespace detail

/// ∂_i log p(θ, x) by central differences with one Richardson step.
inline std::vector<double> score(const FiniteStatModel& m, const Point& theta, std::size_t x) {
  std::vector<double> s(m.n_params);
  for (std::size_t i = 0; i < m.n_params; ++i)
    s[i] = detail::richardson(
        [&](double h) {
          return (m.log_density(detail::shifted(theta, i, h), x) -
                  m.log_density(detail::shifted(theta, i, -h), x)) /
                 (2 * h);
        },
        kScoreStep);
  return s;
}

/// ∂_i∂_j log p(θ, x), flattened i·d + j.
inline std::vector<double> hessian(const FiniteStatModel& m, const Point& theta, std::size_t x) {
  const std::size_t d = m.n_params;
  std::vector<double> out(d * d);
  auto f = [&](const Point& t) { return m.log_density(t, x); };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      double v = detail::richardson(
          [&](double h) {
            if (i == j)
              return (f(detail::shifted(theta, i, h)) - 2 * f(theta) + f(detail::shifted(theta, i, -h))) /
                     (h * h);
            auto pp = detail::shifted(detail::shifted(theta, i, h), j, h);
            auto pm = detail::shifted(detail::shifted(theta, i, h), j, -h);
            auto mp = detail::shifted(detail::shifted(theta, i, -h), j, h);
            auto mm = detail::shifted(detail::shifted(theta, i, -h), j, -h);
            return (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
          },
          kSecondStep);
      out[i * d + j] = out[j * d + i] = v;
    }
  return out;
}

/// g_ij = Σ_x p ∂_iℓ ∂_jℓ, flattened i·d + j.
inline std::vector<double> fisher_information(const FiniteStatModel& m, const Point& theta) {
  const std::size_t d = m.n_params;
  auto p = probabilities(m, theta);
  std::vector<double> g(d * d);
  for (std::size_t x = 0; x < m.n_outcomes; ++x) {
    auto s = score(m, theta, x);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g[i * d + j] += p[x] * s[i] * s[j];
  }
  return g;
}

/// −Σ_x p ∂_i∂_jℓ, the second Fisher route.
inline std::vector<double> fisher_information_hessian(const FiniteStatModel& m, const Point& theta) {
  const std::size_t d = m.n_params;
  auto p = probabilities(m, theta);
  std::vector<double> g(d * d);
  for (std::size_t x = 0; x < m.n_outcomes; ++x) {
    auto h = hessian(m, theta, x);
    for (std::size_t k = 0; k < d * d; ++k) g[k] -= p[x] * h[k];
  }
  return g;
}

/// Lowered Γ_{ij,k}(α) = Σ_x p [∂_i∂_jℓ + (1+α)/2 ∂_iℓ ∂_jℓ] ∂_kℓ (counting
/// measure on the outcomes), flattened (i·d + j)·d + k.
inline std::vector<double> alpha_christoffels(const FiniteStatModel& m, const Point& theta, double alpha) {
  const std::size_t d = m.n_params;
  auto p = probabilities(m, theta);
  std::vector<double> out(d * d * d);
  const double c = (1 + alpha) / 2;
  for (std::size_t x = 0; x < m.n_outcomes; ++x) {
    auto s = score(m, theta, x);
    auto h = hessian(m, theta, x);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          out[(i * d + j) * d + k] += p[x] * (h[i * d + j] + c * s[i] * s[j]) * s[k];
  }
  return out;
}

/// Inverse of a small symmetric matrix by Gauss–Jordan with partial
/// pivoting; SingularFisher when a pivot is negligible.
inline std::vector<double> invert(const std::vector<double>& a, std::size_t d) {
  std::vector<double> m = a, inv(d * d);
  for (std::size_t i = 0; i < d; ++i) inv[i * d + i] = 1;
  double scale = 0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(m[r * d + c]) > std::abs(m[piv * d + c])) piv = r;
    if (std::abs(m[piv * d + c]) <= 1e-12 * std::max(scale, 1.0))
      throw SingularFisher("Fisher information is singular");
    for (std::size_t k = 0; k < d; ++k) {
      std::swap(m[c * d + k], m[piv * d + k]);
      std::swap(inv[c * d + k], inv[piv * d + k]);
    }
    double pv = m[c * d + c];
    for (std::size_t k = 0; k < d; ++k) {
      m[c * d + k] /= pv;
      inv[c * d + k] /= pv;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      double f = m[r * d + c];
      if (f == 0) continue;
      for (std::size_t k = 0; k < d; ++k) {
        m[r * d + k] -= f * m[c * d + k];
        inv[r * d + k] -= f * inv[c * d + k];
      }
    }
  }
  return inv;
}

/// Γ^l_{ij}(α) = Σ_k g^{lk} Γ_{ij,k}(α), flattened (i·d + j)·d + l.
inline std::vector<double> raised_christoffels(const FiniteStatModel& m, const Point& theta, double alpha) {
  const std::size_t d = m.n_params;
  auto ginv = invert(fisher_information(m, theta), d);
  auto low = alpha_christoffels(m, theta, alpha);
  std::vector<double> out(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t k = 0; k < d; ++k) out[(i * d + j) * d + l] += ginv[l * d + k] * low[(i * d + j) * d + k];
  return out;
}

struct CurvatureAtPoint {
  /// R^l_{ijk} at ((i·d + j)·d + k)·d + l.
  std::vector<double> r;
  double max_abs = 0;
};

/// R^l_{ijk} = ∂_iΓ^l_{jk} − ∂_jΓ^l_{ik} + Γ^l_{im}Γ^m_{jk} − Γ^l_{jm}Γ^m_{ik}.
inline CurvatureAtPoint alpha_curvature(const FiniteStatModel& m, const Point& theta, double alpha) {
  const std::size_t d = m.n_params;
  auto gam = raised_christoffels(m, theta, alpha);
  auto at = [d](std::size_t i, std::size_t j, std::size_t l) { return (i * d + j) * d + l; };
  // dgam[a] = ∂_a Γ
  std::vector<std::vector<double>> dgam(d);
  for (std::size_t a = 0; a < d; ++a) {
    auto central = [&](double h) {
      auto plus = raised_christoffels(m, detail::shifted(theta, a, h), alpha);
      auto minus = raised_christoffels(m, detail::shifted(theta, a, -h), alpha);
      std::vector<double> v(plus.size());
      for (std::size_t n = 0; n < v.size(); ++n) v[n] = (plus[n] - minus[n]) / (2 * h);
      return v;
    };
    auto coarse = central(kCurvatureStep);
    auto fine = central(kCurvatureStep / 2);
    dgam[a].resize(coarse.size());
    for (std::size_t n = 0; n < coarse.size(); ++n) dgam[a][n] = (4 * fine[n] - coarse[n]) / 3;
  }
  CurvatureAtPoint out;
  out.r.assign(d * d * d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          double v = dgam[i][at(j, k, l)] - dgam[j][at(i, k, l)];
          for (std::size_t s = 0; s < d; ++s)
            v += gam[at(i, s, l)] * gam[at(j, k, s)] - gam[at(j, s, l)] * gam[at(i, k, s)];
          out.r[((i * d + j) * d + k) * d + l] = v;
          out.max_abs = std::max(out.max_abs, std::abs(v));
        }
  return out;
}

struct DefectProbe {
  bool exponential_like = false;
  /// max over the grid of |R(α)| for α = −1 and +1.
  double max_curvature_minus = 0, max_curvature_plus = 0;
  /// max over the grid of |Γ^l_{ij} − Γ^l_{ji}| for both α.
  double max_torsion = 0;
  /// α in {−1, +1} with the smaller curvature norm.
  double best_alpha = -1;
};

/// Numerical surrogate for "the model is an exponential family": both ±1
/// connections are flat and torsion-free on the grid within `tol`.
inline DefectProbe exponential_defect_probe(const FiniteStatModel& m, const std::vector<Point>& grid,
                                            double tol = 1e-4) {
  DefectProbe out;
  const std::size_t d = m.n_params;
  for (const auto& theta : grid) {
    for (double alpha : {-1.0, 1.0}) {
      auto gam = raised_christoffels(m, theta, alpha);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t l = 0; l < d; ++l)
            out.max_torsion = std::max(out.max_torsion, std::abs(gam[(i * d + j) * d + l] - gam[(j * d + i) * d + l]));
      double r = alpha_curvature(m, theta, alpha).max_abs;
      double& slot = alpha < 0 ? out.max_curvature_minus : out.max_curvature_plus;
      slot = std::max(slot, r);
    }
  }
  out.best_alpha = out.max_curvature_plus < out.max_curvature_minus ? 1.0 : -1.0;
  out.exponential_like = out.max_curvature_minus < tol && out.max_curvature_plus < tol && out.max_torsion < tol;
  return out;
}

// Families -----------------------------------------------------------------

inline FiniteStatModel bernoulli() {
  FiniteStatModel m;
  m.family = "bernoulli";
  m.n_outcomes = 2;
  m.n_params = 1;
  m.box = {{0.0, 1.0}};
  m.log_density = [](const Point& t, std::size_t x) { return std::log(x == 1 ? t[0] : 1 - t[0]); };
  m.analytic_score = [](const Point& t, std::size_t x) {
    return std::vector<double>{x == 1 ? 1 / t[0] : -1 / (1 - t[0])};
  };
  return m;
}

/// Mean coordinates θ_i = p_i for i < N−1, p_{N−1} = 1 − Σθ.
inline FiniteStatModel categorical(std::size_t n) {
  if (n < 2) throw DomainViolation("categorical needs at least two outcomes");
  FiniteStatModel m;
  m.family = "categorical:" + std::to_string(n);
  m.n_outcomes = n;
  m.n_params = n - 1;
  m.box.assign(n - 1, {0.0, 1.0});
  m.admissible = [](const Point& t) {
    double s = 0;
    for (double v : t) s += v;
    return s < 1;
  };
  m.log_density = [n](const Point& t, std::size_t x) {
    if (x + 1 < n) return std::log(t[x]);
    double s = 0;
    for (double v : t) s += v;
    return std::log(1 - s);
  };
  m.analytic_score = [n](const Point& t, std::size_t x) {
    std::vector<double> s(n - 1);
    double last = 1;
    for (double v : t) last -= v;
    for (std::size_t i = 0; i + 1 < n; ++i) s[i] = (x == i ? 1 / t[i] : 0) - (x + 1 == n ? 1 / last : 0);
    return s;
  };
  return m;
}

/// Logit coordinates p_i ∝ exp(θ_i) for i < N−1, p_{N−1} ∝ 1.
inline FiniteStatModel categorical_logit(std::size_t n) {
  if (n < 2) throw DomainViolation("categorical needs at least two outcomes");
  FiniteStatModel m;
  m.family = "categorical-logit:" + std::to_string(n);
  m.n_outcomes = n;
  m.n_params = n - 1;
  m.box.assign(n - 1, {-20.0, 20.0});
  m.log_density = [n](const Point& t, std::size_t x) {
    double mx = 0;
    for (double v : t) mx = std::max(mx, v);
    double z = std::exp(-mx);
    for (double v : t) z += std::exp(v - mx);
    double lse = mx + std::log(z);
    return (x + 1 < n ? t[x] : 0.0) - lse;
  };
  m.analytic_score = [n](const Point& t, std::size_t x) {
    double z = 1;
    for (double v : t) z += std::exp(v);
    std::vector<double> s(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) s[i] = (x == i ? 1.0 : 0.0) - std::exp(t[i]) / z;
    return s;
  };
  return m;
}

/// Two-parameter curved subfamily of categorical(4): logits
/// (θ₁, θ₂, θ₁² + θ₂²) against the last outcome.
inline FiniteStatModel curved4() {
  FiniteStatModel m;
  m.family = "curved4";
  m.n_outcomes = 4;
  m.n_params = 2;
  m.box = {{-3.0, 3.0}, {-3.0, 3.0}};
  m.log_density = [](const Point& t, std::size_t x) {
    const double eta[4] = {t[0], t[1], t[0] * t[0] + t[1] * t[1], 0.0};
    double mx = 0;
    for (double v : eta) mx = std::max(mx, v);
    double z = 0;
    for (double v : eta) z += std::exp(v - mx);
    return eta[x] - mx - std::log(z);
  };
  m.analytic_score = [](const Point& t, std::size_t x) {
    const double eta[4] = {t[0], t[1], t[0] * t[0] + t[1] * t[1], 0.0};
    double z = 0;
    for (double v : eta) z += std::exp(v);
    const double deta[2][4] = {{1, 0, 2 * t[0], 0}, {0, 1, 2 * t[1], 0}};
    std::vector<double> s(2);
    for (std::size_t i = 0; i < 2; ++i) {
      double mean = 0;
      for (std::size_t y = 0; y < 4; ++y) mean += std::exp(eta[y]) / z * deta[i][y];
      s[i] = deta[i][x] - mean;
    }
    return s;
  };
  return m;
}

/// bernoulli | categorical:N | categorical-logit:N | curved4
inline FiniteStatModel family_by_name(const std::string& name) {
  auto count = [&](const std::string& prefix) -> std::optional<std::size_t> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string rest = name.substr(prefix.size());
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad outcome count in family '" + name + "'");
    return static_cast<std::size_t>(std::stoul(rest));
  };
  if (name == "bernoulli") return bernoulli();
  if (name == "curved4") return curved4();
  if (auto n = count("categorical-logit:")) return categorical_logit(*n);
  if (auto n = count("categorical:")) return categorical(*n);
  throw ParseError("unknown family '" + name + "'");
}

}  // namespace koszul::stat

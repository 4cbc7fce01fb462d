#include <gtest/gtest.h>

#include <cmath>

#include "koszul/statmodel.hpp"

using namespace koszul;
using namespace koszul::stat;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// categorical(3) in mean coordinates: g_ij = δ_ij/θ_i + 1/(1 − θ₁ − θ₂)
std::vector<double> categorical3_metric(const Point& t) {
  double q = 1 - t[0] - t[1];
  return {1 / t[0] + 1 / q, 1 / q, 1 / q, 1 / t[1] + 1 / q};
}

// ∂_k g_ij, at (k·2 + i)·2 + j
std::vector<double> categorical3_metric_derivative(const Point& t) {
  double q = 1 - t[0] - t[1];
  std::vector<double> out(8);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        out[(k * 2 + i) * 2 + j] = (i == j && i == k ? -1 / (t[i] * t[i]) : 0.0) + 1 / (q * q);
  return out;
}

std::vector<Point> logit_grid() {
  std::vector<Point> g;
  for (double a : {-1.0, 0.0, 1.5})
    for (double b : {-0.5, 0.25, 2.0}) g.push_back({a, b});
  return g;
}

FiniteStatModel flat_coin() {
  // p does not depend on θ: Fisher information vanishes
  FiniteStatModel m;
  m.family = "flat";
  m.n_outcomes = 2;
  m.n_params = 1;
  m.box = {{0.0, 1.0}};
  m.log_density = [](const Point&, std::size_t) { return std::log(0.5); };
  return m;
}

}  // namespace

TEST(Fisher, BernoulliAtOneHalf) {
  auto g = fisher_information(bernoulli(), {0.5});
  ASSERT_EQ(g.size(), 1u);
  EXPECT_NEAR(g[0], 4.0, 1e-6);
  for (double t : {0.1, 0.3, 0.8}) EXPECT_NEAR(fisher_information(bernoulli(), {t})[0], 1 / (t * (1 - t)), 1e-5);
}

TEST(Fisher, CategoricalThree) {
  auto g = fisher_information(categorical(3), {1.0 / 3, 1.0 / 3});
  std::vector<double> want{6, 3, 3, 6};
  EXPECT_LT(max_abs_diff(g, want), 1e-5);
  Point t{0.2, 0.5};
  EXPECT_LT(max_abs_diff(fisher_information(categorical(3), t), categorical3_metric(t)), 1e-5);
}

TEST(Fisher, TwoRoutesAgree) {
  std::vector<std::pair<FiniteStatModel, Point>> cases{
      {bernoulli(), {0.3}},           {categorical(3), {0.2, 0.5}},   {categorical(4), {0.1, 0.2, 0.3}},
      {categorical_logit(3), {0.4, -1}}, {curved4(), {0.3, -0.2}},     {curved4(), {-0.5, 0.7}}};
  for (const auto& [m, t] : cases)
    EXPECT_LT(max_abs_diff(fisher_information(m, t), fisher_information_hessian(m, t)), 1e-6) << m.family;
}

TEST(Score, MatchesAnalyticScore) {
  std::vector<std::pair<FiniteStatModel, Point>> cases{
      {bernoulli(), {0.7}}, {categorical(3), {0.2, 0.5}}, {categorical_logit(4), {0.1, -0.3, 1}}, {curved4(), {0.3, -0.2}}};
  for (const auto& [m, t] : cases)
    for (std::size_t x = 0; x < m.n_outcomes; ++x)
      EXPECT_LT(max_abs_diff(score(m, t, x), m.analytic_score(t, x)), 1e-7) << m.family;
}

TEST(AlphaConnection, AffineInAlpha) {
  auto m = curved4();
  Point t{0.3, -0.2};
  auto g0 = alpha_christoffels(m, t, 0);
  for (double a : {0.5, 1.0, 2.0}) {
    auto p = alpha_christoffels(m, t, a), q = alpha_christoffels(m, t, -a);
    for (std::size_t i = 0; i < g0.size(); ++i) EXPECT_NEAR(p[i] + q[i], 2 * g0[i], 1e-9);
  }
}

TEST(AlphaConnection, ZeroIsLeviCivita) {
  auto m = categorical(3);
  for (const Point& t : {Point{0.2, 0.5}, Point{1.0 / 3, 1.0 / 3}, Point{0.6, 0.1}}) {
    auto dg = categorical3_metric_derivative(t);
    auto low = alpha_christoffels(m, t, 0);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) {
          double lc = 0.5 * (dg[(i * 2 + j) * 2 + k] + dg[(j * 2 + i) * 2 + k] - dg[(k * 2 + i) * 2 + j]);
          EXPECT_NEAR(low[(i * 2 + j) * 2 + k], lc, 1e-5);
        }
  }
}

TEST(AlphaConnection, LogitCoordinatesAreAffineForMinusOne) {
  auto m = categorical_logit(3);
  for (const auto& t : logit_grid())
    for (double v : alpha_christoffels(m, t, -1)) EXPECT_LT(std::abs(v), 1e-5);
}

TEST(Curvature, CategoricalLogitIsDuallyFlat) {
  auto m = categorical_logit(3);
  for (const auto& t : logit_grid())
    for (double a : {-1.0, 1.0}) EXPECT_LT(alpha_curvature(m, t, a).max_abs, 1e-4) << a;
}

TEST(Curvature, CurvedFamilyIsCurved) {
  EXPECT_GT(alpha_curvature(curved4(), {0.3, -0.2}, -1).max_abs, 1e-2);
}

TEST(Curvature, OneParameterIsFlat) {
  for (double t : {0.2, 0.5, 0.9})
    for (double a : {-1.0, 0.0, 1.0}) EXPECT_EQ(alpha_curvature(bernoulli(), {t}, a).max_abs, 0.0);
}

TEST(Curvature, AntisymmetricInFirstPair) {
  auto c = alpha_curvature(curved4(), {0.4, 0.1}, 0.5);
  const std::size_t d = 2;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          EXPECT_NEAR(c.r[((i * d + j) * d + k) * d + l], -c.r[((j * d + i) * d + k) * d + l], 1e-12);
}

TEST(DefectProbe, Verdicts) {
  auto flat = exponential_defect_probe(categorical_logit(3), logit_grid());
  EXPECT_TRUE(flat.exponential_like);
  EXPECT_LT(flat.max_torsion, 1e-4);
  auto curved = exponential_defect_probe(curved4(), {{0.3, -0.2}, {0.0, 0.5}});
  EXPECT_FALSE(curved.exponential_like);
  EXPECT_GT(std::max(curved.max_curvature_minus, curved.max_curvature_plus), 1e-2);
  EXPECT_EQ(curved.best_alpha, curved.max_curvature_plus < curved.max_curvature_minus ? 1.0 : -1.0);
}

TEST(StatModel, Errors) {
  EXPECT_THROW(fisher_information(bernoulli(), {1.5}), DomainViolation);
  EXPECT_THROW(fisher_information(bernoulli(), {0.5, 0.5}), DomainViolation);
  EXPECT_THROW(fisher_information(categorical(3), {0.6, 0.6}), DomainViolation);
  EXPECT_THROW(categorical(1), DomainViolation);
  auto bad = bernoulli();
  bad.log_density = [](const Point&, std::size_t) { return std::log(0.4); };
  EXPECT_THROW(probabilities(bad, {0.5}), NonNormalized);
  EXPECT_THROW(raised_christoffels(flat_coin(), {0.5}, 0), SingularFisher);
  EXPECT_THROW(family_by_name("poisson"), ParseError);
  EXPECT_EQ(family_by_name("categorical-logit:4").n_params, 3u);
}

TEST(StatModel, ProbabilitiesNormalize) {
  for (const auto& [m, t] : std::vector<std::pair<FiniteStatModel, Point>>{
           {categorical(4), {0.1, 0.2, 0.3}}, {categorical_logit(3), {15, -15}}, {curved4(), {2.5, -2.5}}}) {
    double s = 0;
    for (double p : probabilities(m, t)) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

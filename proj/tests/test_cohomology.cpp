#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"

using namespace koszul;

namespace {

using Dims = std::vector<std::size_t>;

BilinearProduct product(std::size_t m, std::initializer_list<std::array<int, 4>> e) {
  return BilinearProduct(oracle::from_entries(m, e, false));
}

Vector random_cochain(std::mt19937_64& rng, std::size_t n) { return oracle::random_vector(rng, n); }

}  // namespace

TEST(KvCoboundary, ZeroProductKillsEverything) {
  std::mt19937_64 rng(83);
  BilinearProduct z(2);
  for (std::size_t q = 1; q <= 3; ++q) {
    EXPECT_TRUE(kv_coboundary_matrix(z, KvCoefficients::adjoint, q).is_zero());
    EXPECT_TRUE(is_zero(kv_coboundary(z, KvCoefficients::scalar, q, random_cochain(rng, oracle::power(2, q)))));
  }
}

TEST(KvCoboundary, MatchesTermByTermOracle) {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 40; ++t) {
    Table3 p = oracle::random_rebased(oracle::kv_pool(), rng);
    BilinearProduct a(p);
    const std::size_t m = p.dim();
    for (bool adjoint : {true, false}) {
      const std::size_t w = adjoint ? m : 1;
      for (std::size_t q = 1; q <= 2; ++q) {
        Vector f = random_cochain(rng, oracle::power(m, q) * w);
        EXPECT_EQ(kv_coboundary(a, adjoint ? KvCoefficients::adjoint : KvCoefficients::scalar, q, f),
                  oracle::kv_delta(p, adjoint, q, f));
      }
    }
  }
}

TEST(KvCoboundary, SquaresToZero) {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 200; ++t) {
    Table3 p = oracle::random_rebased(oracle::kv_pool(), rng);
    BilinearProduct a(p);
    const std::size_t m = p.dim();
    for (auto coeffs : {KvCoefficients::adjoint, KvCoefficients::scalar}) {
      Matrix d1 = kv_coboundary_matrix(a, coeffs, 1), d2 = kv_coboundary_matrix(a, coeffs, 2);
      EXPECT_TRUE((d2 * d1).is_zero());
      if (t % 10 == 0) EXPECT_TRUE((kv_coboundary_matrix(a, coeffs, 3) * d2).is_zero());
    }
    for (const auto& xi : kv_degree0_space(a)) {
      Vector d0 = kv_coboundary_degree0(a, xi);
      EXPECT_TRUE(is_zero(kv_coboundary(a, KvCoefficients::adjoint, 1, d0)));
    }
    (void)m;
  }
}

TEST(KvCoboundary, RejectsNonKv) {
  BilinearProduct half(Rational(1, 2) * catalog::so3().lie.table());
  EXPECT_THROW(kv_coboundary_matrix(half, KvCoefficients::adjoint, 1), NotKV);
  EXPECT_THROW(kv_cohomology_dims(half, KvCoefficients::scalar, 2), NotKV);
  EXPECT_THROW(kv_cohomology_dims(BilinearProduct(1), KvCoefficients::scalar, 4), DomainViolation);
}

TEST(KvCoboundary, ScalarDegreeTwoIsTheHessianCondition) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 30; ++t) {
    Table3 p = oracle::random_rebased(oracle::kv_pool(), rng);
    BilinearProduct a(p);
    InvariantConnection c(LieAlgebra(oracle::commutator(p)), a);
    const std::size_t m = p.dim();
    auto hess = hessian_cocycle_space(c);
    Matrix d = kv_coboundary_matrix(a, KvCoefficients::scalar, 2);
    // symmetric kernel of δ equals the Hessian cocycle space
    std::vector<Vector> params;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        Vector v(m * m);
        v[i * m + j] = v[j * m + i] = 1;
        params.push_back(v);
      }
    Matrix restricted(d.rows(), params.size());
    for (std::size_t s = 0; s < params.size(); ++s) {
      Vector col = d * params[s];
      for (std::size_t r = 0; r < d.rows(); ++r) restricted(r, s) = col[r];
    }
    EXPECT_EQ(nullspace(restricted).size(), hess.dim());
    for (const auto& g : hess.basis) EXPECT_TRUE(is_zero(d * g));
  }
}

TEST(KvCohomology, Examples) {
  EXPECT_EQ(kv_cohomology_dims(BilinearProduct(1), KvCoefficients::adjoint, 3).dims(), (Dims{1, 1, 1, 1}));
  auto s = kv_cohomology_dims(BilinearProduct(2), KvCoefficients::scalar, 2);
  EXPECT_EQ(s.dims(), (Dims{1, 2, 4}));
  EXPECT_EQ(s.c0_rule, kKvScalarC0);
  auto h = product(3, {{0, 1, 2, 1}});
  EXPECT_EQ(kv_cohomology_dims(h, KvCoefficients::scalar, 3).dims(), (Dims{1, 2, 5, 13}));
  EXPECT_EQ(kv_cohomology_dims(h, KvCoefficients::adjoint, 3).dims(), (Dims{1, 2, 11, 29}));
}

TEST(KvCohomology, InvariantUnderChangeOfBasis) {
  std::mt19937_64 rng(103);
  for (const auto& p : oracle::kv_pool()) {
    auto base_s = kv_cohomology_dims(BilinearProduct(p), KvCoefficients::scalar, 2).dims();
    auto base_a = kv_cohomology_dims(BilinearProduct(p), KvCoefficients::adjoint, 2).dims();
    for (int k = 0; k < 2; ++k) {
      Matrix q = oracle::random_unimodular(rng, p.dim());
      q(0, 0) = q(0, 0) * 2;  // not unimodular any more, still invertible
      if (!inverse(q)) continue;
      BilinearProduct r(oracle::rebase(p, q));
      EXPECT_EQ(kv_cohomology_dims(r, KvCoefficients::scalar, 2).dims(), base_s);
      EXPECT_EQ(kv_cohomology_dims(r, KvCoefficients::adjoint, 2).dims(), base_a);
    }
  }
}

TEST(CeCoboundary, MatchesAlternatingOracle) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 30; ++t) {
    Table3 c = oracle::random_rebased(oracle::lie_pool(3), rng);
    LieAlgebra lie(c);
    const std::size_t m = c.dim();
    for (bool adjoint : {false, true}) {
      const std::size_t w = adjoint ? m : 1;
      for (std::size_t p = 0; p + 1 <= m && p <= 2; ++p) {
        Vector full = oracle::random_alternating(rng, m, w, p);
        Vector image = oracle::ce_delta_full(c, adjoint, p, full);
        // restrict to increasing tuples for comparison with the library
        auto src = detail::increasing_tuples(m, p), dst = detail::increasing_tuples(m, p + 1);
        Vector compact;
        for (const auto& tup : src) {
          std::size_t code = 0;
          for (auto x : tup) code = code * m + x;
          for (std::size_t l = 0; l < w; ++l) compact.push_back(full[code * w + l]);
        }
        Vector got = ce_coboundary_matrix(lie, adjoint ? CeCoefficients::adjoint : CeCoefficients::trivial, p) * compact;
        for (std::size_t r = 0; r < dst.size(); ++r) {
          std::size_t code = 0;
          for (auto x : dst[r]) code = code * m + x;
          for (std::size_t l = 0; l < w; ++l) EXPECT_EQ(got[r * w + l], image[code * w + l]);
        }
      }
    }
  }
}

TEST(CeCoboundary, SquaresToZero) {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 200; ++t) {
    LieAlgebra lie(oracle::random_rebased(oracle::lie_pool(3), rng));
    for (auto coeffs : {CeCoefficients::trivial, CeCoefficients::adjoint})
      for (std::size_t p = 0; p + 2 <= lie.dim() + 1 && p <= 2; ++p) {
        if (p + 1 > lie.dim()) break;
        Matrix a = ce_coboundary_matrix(lie, coeffs, p), b = ce_coboundary_matrix(lie, coeffs, p + 1);
        EXPECT_TRUE((b * a).is_zero());
      }
  }
}

TEST(CeCohomology, Examples) {
  EXPECT_EQ(ce_cohomology_dims(LieAlgebra::abelian(3), CeCoefficients::trivial, 3).dims(), (Dims{1, 3, 3, 1}));
  EXPECT_EQ(ce_cohomology_dims(catalog::so3().lie, CeCoefficients::trivial, 3).dims(), (Dims{1, 0, 0, 1}));
  EXPECT_EQ(ce_cohomology_dims(catalog::aff1().lie, CeCoefficients::trivial, 2).dims(), (Dims{1, 1, 0}));
  // Whitehead: semisimple algebras have H^1 = H^2 = 0 with adjoint coefficients
  auto sl2 = ce_cohomology_dims(catalog::sl2().lie, CeCoefficients::adjoint, 3).dims();
  EXPECT_EQ(sl2[0], 0u);
  EXPECT_EQ(sl2[1], 0u);
  EXPECT_EQ(sl2[2], 0u);
}

TEST(CeCohomology, InvariantUnderChangeOfBasis) {
  std::mt19937_64 rng(113);
  for (const auto& c : oracle::lie_pool(3)) {
    auto base = ce_cohomology_dims(LieAlgebra(c), CeCoefficients::adjoint, 3).dims();
    auto triv = ce_cohomology_dims(LieAlgebra(c), CeCoefficients::trivial, 3).dims();
    LieAlgebra r(oracle::rebase(c, oracle::random_unimodular(rng, c.dim())));
    EXPECT_EQ(ce_cohomology_dims(r, CeCoefficients::adjoint, 3).dims(), base);
    EXPECT_EQ(ce_cohomology_dims(r, CeCoefficients::trivial, 3).dims(), triv);
  }
}

TEST(Hochschild, MatchesOracleAndSquaresToZero) {
  std::mt19937_64 rng(127);
  for (int t = 0; t < 200; ++t) {
    Table3 p = oracle::random_rebased(oracle::associative_pool(), rng);
    BilinearProduct a(p);
    Matrix d0 = hochschild_coboundary_matrix(a, 0), d1 = hochschild_coboundary_matrix(a, 1),
           d2 = hochschild_coboundary_matrix(a, 2);
    EXPECT_TRUE((d1 * d0).is_zero());
    EXPECT_TRUE((d2 * d1).is_zero());
    if (t % 10 == 0) {
      for (std::size_t n = 0; n <= 1; ++n) {
        Vector f = oracle::random_vector(rng, oracle::power(p.dim(), n) * p.dim());
        EXPECT_EQ(hochschild_coboundary_matrix(a, n) * f, oracle::hochschild_delta(p, n, f));
      }
    }
  }
}

TEST(Hochschild, Examples) {
  EXPECT_EQ(hochschild_dims(*catalog::mat2().product).dims()[1], 0u);
  EXPECT_EQ(hochschild_dims(*catalog::mat2().product).dims(), (Dims{1, 0, 0}));
  EXPECT_EQ(hochschild_dims(product(1, {{0, 0, 0, 1}})).dims(), (Dims{1, 0, 0}));
  EXPECT_EQ(hochschild_dims(BilinearProduct(1)).dims(), (Dims{1, 1, 1}));
  EXPECT_THROW(hochschild_dims(product(3, {{0, 1, 2, 1}, {2, 0, 1, 1}})), NotAssociative);
}

TEST(MaurerCartan, VanishesOnDifferencesOfBrackets) {
  std::mt19937_64 rng(131);
  auto pool = oracle::lie_pool(4);
  int done = 0;
  while (done < 100) {
    Table3 a = oracle::random_rebased(pool, rng), b = oracle::random_rebased(pool, rng);
    if (a.dim() != b.dim()) continue;
    ++done;
    EXPECT_TRUE(maurer_cartan_defect(LieAlgebra(a), b - a).is_zero());
  }
  EXPECT_TRUE(maurer_cartan_defect(catalog::so3().lie, Table3(3)).is_zero());
}

TEST(MaurerCartan, EqualsJacobiatorOfTheSum) {
  std::mt19937_64 rng(137);
  auto so3 = catalog::so3().lie;
  std::size_t nonzero = 0;
  for (int t = 0; t < 30; ++t) {
    Table3 b(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          b(i, j, k) = oracle::small(rng, -2, 2);
          b(j, i, k) = -b(i, j, k);
        }
    auto d = maurer_cartan_defect(so3, b);
    Table3 sum = so3.table() + b;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(d(i, j, k, l), oracle::jacobiator(sum, i, j, k, l));
    nonzero += !d.is_zero();
  }
  EXPECT_GT(nonzero, 20u);
}

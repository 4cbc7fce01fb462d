#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace koszul;

namespace {

// (A, a)·(B, b) = (BA, Ba), straight from matrices.
Table3 affine_oracle(std::size_t m) {
  const std::size_t n = m * m + m;
  auto unpack = [m](std::size_t p) {
    Matrix a(m, m);
    Vector v(m);
    if (p < m * m) a(p / m, p % m) = 1;
    else v[p - m * m] = 1;
    return std::pair{a, v};
  };
  Table3 t(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      auto [a, va] = unpack(p);
      auto [b, vb] = unpack(q);
      Matrix ba = b * a;
      Vector bv = b * va;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) t(p, q, r * m + c) = ba(r, c);
      for (std::size_t r = 0; r < m; ++r) t(p, q, m * m + r) = bv[r];
    }
  return t;
}

Matrix right_oracle(const Table3& p, const Vector& w) {
  const std::size_t m = p.dim();
  Matrix r(m, m);
  for (std::size_t c = 0; c < m; ++c) {
    Vector col = oracle::mul(p, oracle::e(m, c), w);
    for (std::size_t k = 0; k < m; ++k) r(k, c) = col[k];
  }
  return r;
}

bool singular_shift_oracle(const Table3& p, const Vector& w) {
  Matrix r = right_oracle(p, w);
  for (std::size_t d = 0; d < r.rows(); ++d) r(d, d) += 1;
  return rank(r) < r.rows();
}

Vector mat2_vec(int e11, int e12, int e21, int e22) { return {e11, e12, e21, e22}; }

}  // namespace

TEST(AffineAlgebra, SmallExamples) {
  EXPECT_EQ(affine_algebra(0).dim(), 0u);
  auto a1 = affine_algebra(1);
  ASSERT_EQ(a1.dim(), 2u);
  EXPECT_EQ(a1(0, 0, 0), 1);  // A·A = A
  EXPECT_EQ(a1(1, 0, 1), 1);  // a·A = a
  EXPECT_EQ(a1(0, 1, 0), 0);
  EXPECT_EQ(a1(0, 1, 1), 0);
  EXPECT_EQ(a1(1, 1, 0), 0);
  EXPECT_EQ(a1(1, 1, 1), 0);
  EXPECT_EQ(affine_algebra(2).dim(), 6u);
}

TEST(AffineAlgebra, MatchesMatrixOracle) {
  for (std::size_t m = 0; m <= 3; ++m) EXPECT_TRUE((affine_algebra(m).table() - affine_oracle(m)).is_zero()) << m;
}

TEST(AffineAlgebra, AssociativeWithLieCommutator) {
  for (std::size_t m = 1; m <= 4; ++m) {
    auto a = affine_algebra(m);
    EXPECT_EQ(a.dim(), m * m + m);
    if (m <= 3) EXPECT_TRUE(oracle::is_associative(a.table())) << m;
    EXPECT_TRUE(a.is_associative()) << m;
    EXPECT_TRUE(oracle::jacobi_holds(oracle::commutator(a.table()))) << m;
    EXPECT_NO_THROW(commutator_bracket(a));
  }
}

TEST(Tower, Dimensions) {
  auto t = tower_dims(1, 3);
  EXPECT_EQ(t.dims, (std::vector<std::size_t>{1, 2, 6, 42}));
  ASSERT_EQ(t.levels.size(), 4u);
  for (std::size_t l = 0; l < 4; ++l) {
    EXPECT_EQ(t.levels[l].dim, t.dims[l]);
    ASSERT_TRUE(t.levels[l].algebra) << l;
    EXPECT_EQ(t.levels[l].algebra->dim(), t.dims[l]);
  }
  EXPECT_TRUE(t.levels[0].algebra->is_zero());
  EXPECT_TRUE(t.levels[2].algebra->is_associative());
  EXPECT_EQ(tower_dims(2, 2).dims, (std::vector<std::size_t>{2, 6, 42}));
  EXPECT_EQ(tower_dims(3, 0).dims, (std::vector<std::size_t>{3}));
  EXPECT_EQ(tower_dims(2, 3).dims.back(), 42u * 42u + 42u);
  EXPECT_FALSE(tower_dims(2, 3).levels.back().algebra);
  EXPECT_FALSE(tower_dims(1, 3, false).levels[1].algebra);
  EXPECT_THROW(tower_dims(1, 4), DomainViolation);
}

TEST(Tower, LevelOneIsFeStarOfAFlatLevelZero) {
  // a flat KV structure on ℝ^m has a full FE* space of dimension m² + m
  for (const std::string name : {"abelian:2", "heisenberg", "affine:1"}) {
    auto e = catalog_entry(name);
    auto fe = solve_fe_star(e.connection());
    EXPECT_EQ(fe.w.dim(), tower_dims(e.lie.dim(), 1).dims[1]) << name;
  }
}

TEST(Completeness, NilpotentAlgebrasAreComplete) {
  auto zero = geometric_completeness(BilinearProduct(3));
  EXPECT_EQ(zero.verdict, Completeness::complete);
  auto h = catalog::heisenberg();
  ASSERT_TRUE(h.product->is_associative());
  auto v = geometric_completeness(*h.product);
  EXPECT_EQ(v.verdict, Completeness::complete);
  EXPECT_FALSE(v.witness);
}

TEST(Completeness, AffineLineIsIncomplete) {
  auto a = affine_algebra(1);
  auto v = geometric_completeness(a);
  ASSERT_EQ(v.verdict, Completeness::incomplete);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(*v.witness, (Vector{-1, 0}));
  EXPECT_TRUE(singular_shift_oracle(a.table(), *v.witness));
  EXPECT_EQ(geometric_completeness(catalog_entry("affine:1").product.value()).verdict, Completeness::incomplete);
}

TEST(Completeness, WitnessesAreSingularShifts) {
  std::vector<Table3> pool = oracle::associative_pool();
  pool.push_back(catalog::mat2().product->table());
  pool.push_back(affine_algebra(2).table());
  for (const auto& p : pool) {
    auto v = geometric_completeness(BilinearProduct(p));
    if (v.witness) EXPECT_TRUE(singular_shift_oracle(p, *v.witness));
    if (v.verdict == Completeness::complete) {
      // no small integer a* makes I + R_a* singular
      const std::size_t m = p.dim();
      std::vector<int> x(m, -2);
      while (true) {
        Vector w(x.begin(), x.end());
        EXPECT_FALSE(singular_shift_oracle(p, w));
        std::size_t k = 0;
        while (k < m && ++x[k] > 2) x[k++] = -2;
        if (k == m) break;
      }
    }
  }
  EXPECT_EQ(geometric_completeness(*catalog::mat2().product).verdict, Completeness::incomplete);
  EXPECT_THROW(geometric_completeness(*catalog::aff1().product), NotAssociative);
}

TEST(Completeness, IsBasisInvariant) {
  std::mt19937_64 rng(211);
  for (const auto& p : oracle::associative_pool()) {
    auto base = geometric_completeness(BilinearProduct(p)).verdict;
    if (base == Completeness::unknown) continue;
    for (int t = 0; t < 3; ++t) {
      auto v = geometric_completeness(BilinearProduct(oracle::rebase(p, oracle::random_unimodular(rng, p.dim()))));
      if (v.verdict != Completeness::unknown) EXPECT_EQ(v.verdict, base);
    }
  }
}

TEST(RightIdeal, Mat2) {
  auto a = *catalog::mat2().product;
  auto row = simple_right_ideal_check(a, {mat2_vec(1, 0, 0, 0), mat2_vec(0, 1, 0, 0)});
  EXPECT_TRUE(row.core.empty());
  EXPECT_TRUE(row.simple);
  EXPECT_TRUE(row.effective_pair);
  auto all = simple_right_ideal_check(a, {mat2_vec(1, 0, 0, 0), mat2_vec(0, 1, 0, 0), mat2_vec(0, 0, 1, 0),
                                          mat2_vec(0, 0, 0, 1)});
  EXPECT_EQ(all.core.size(), 4u);
  EXPECT_FALSE(all.simple);
  auto none = simple_right_ideal_check(a, {});
  EXPECT_TRUE(none.simple);
  try {
    simple_right_ideal_check(a, {mat2_vec(1, 0, 0, 0), mat2_vec(0, 0, 1, 0)});
    FAIL() << "a left ideal is not a right ideal";
  } catch (const NotRightIdeal& e) {
    EXPECT_LT(e.ideal_index(), 2u);
    EXPECT_LT(e.algebra_index(), 4u);
  }
  EXPECT_THROW(simple_right_ideal_check(a, {Vector{1, 0}}), ShapeMismatch);
}

TEST(RightIdeal, CoreIsATwoSidedIdealInsideI) {
  // upper triangular 2×2: span{E12} is two-sided, span{E11, E12} is a right ideal
  Table3 p = oracle::upper_triangular2();
  auto a = BilinearProduct(p);
  const std::size_t m = p.dim();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Vector> gen;
    for (std::size_t k = 0; k < m; ++k) gen.push_back(oracle::mul(p, oracle::e(m, i), oracle::e(m, k)));
    std::vector<Vector> ideal = row_basis(gen, m);
    auto r = simple_right_ideal_check(a, ideal);
    for (const auto& x : r.core) {
      EXPECT_TRUE(in_span(ideal, x, m));
      for (std::size_t k = 0; k < m; ++k) {
        EXPECT_TRUE(in_span(r.core, oracle::mul(p, x, oracle::e(m, k)), m));
        EXPECT_TRUE(in_span(r.core, oracle::mul(p, oracle::e(m, k), x), m));
      }
    }
    EXPECT_EQ(r.simple, r.core.empty());
  }
}

TEST(Completeness, SubalgebraSpotCheck) {
  // the upper-left block {A, a} of affine(2) restricted to diagonal A
  auto a2 = affine_algebra(2);
  std::vector<Vector> span;
  for (std::size_t k : {0u, 3u, 4u, 5u}) span.push_back(unit_vector(6, k));
  for (const auto& x : span)
    for (const auto& y : span) EXPECT_TRUE(in_span(span, a2.multiply(x, y), 6));
  Table3 sub(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Vector z = a2.multiply(span[i], span[j]);
      for (std::size_t k = 0; k < 4; ++k) sub(i, j, k) = z[std::array<std::size_t, 4>{0, 3, 4, 5}[k]];
    }
  auto v = geometric_completeness(BilinearProduct(sub));
  EXPECT_EQ(v.verdict, Completeness::incomplete);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(singular_shift_oracle(sub, *v.witness));
}

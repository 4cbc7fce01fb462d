#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"

using namespace koszul;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  std::size_t r = rows.size(), c = rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(parse_rational(" 7/-14 "), Rational(-1, 2));
  EXPECT_EQ(to_string(Rational(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Rational, SeededSamplersAreReproducible) {
  std::mt19937_64 a(derive_seed(7, 3)), b(derive_seed(7, 3));
  for (int i = 0; i < 20; ++i) {
    Rational x = random_rational(a, 10, 16);
    EXPECT_EQ(x, random_rational(b, 10, 16));
    EXPECT_LE(abs_value(x), 10);
    EXPECT_LE(x.get_den(), 16);
  }
  EXPECT_NE(derive_seed(7, 3), derive_seed(7, 4));
}

TEST(Linalg, RankNullspaceDeterminant) {
  Matrix a = mat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(a), 2u);
  auto ns = nullspace(a);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero(a * ns[0]));
  EXPECT_EQ(determinant(a), 0);
  EXPECT_EQ(determinant(mat({{2, 1}, {7, 4}})), 1);
  EXPECT_EQ(determinant(mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 3}})), -3);
  EXPECT_FALSE(inverse(a).has_value());
}

TEST(Linalg, InverseSolveAndSpans) {
  Matrix a = mat({{2, 1}, {7, 4}});
  auto inv = inverse(a);
  ASSERT_TRUE(inv);
  EXPECT_EQ(a * *inv, Matrix::identity(2));
  auto x = solve(a, Vector{Rational(3), Rational(11)});
  ASSERT_TRUE(x);
  EXPECT_EQ(a * *x, (Vector{Rational(3), Rational(11)}));
  EXPECT_FALSE(solve(mat({{1, 1}, {1, 1}}), Vector{Rational(0), Rational(1)}));

  std::vector<Vector> span{{1, 0, 1}, {0, 1, 1}, {1, 1, 2}};
  EXPECT_EQ(span_dim(span, 3), 2u);
  EXPECT_TRUE(in_span(span, Vector{2, 3, 5}, 3));
  EXPECT_FALSE(in_span(span, Vector{0, 0, 1}, 3));
  auto c = coordinates(std::vector<Vector>{{1, 0, 1}, {0, 1, 1}}, Vector{2, 3, 5}, 3);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (Vector{2, 3}));
  auto cap = intersect(std::vector<Vector>{{1, 0, 0}, {0, 1, 0}}, std::vector<Vector>{{0, 1, 0}, {0, 0, 1}}, 3);
  ASSERT_EQ(cap.size(), 1u);
  EXPECT_TRUE(in_span(std::vector<Vector>{{0, 1, 0}}, cap[0], 3));
}

TEST(Linalg, SignatureAndDefiniteness) {
  auto s = signature(mat({{1, 2}, {2, 1}}));
  EXPECT_EQ(s.positive, 1u);
  EXPECT_EQ(s.negative, 1u);
  EXPECT_EQ(s.zero, 0u);
  EXPECT_TRUE(is_positive_definite(mat({{2, 1}, {1, 2}})));
  EXPECT_FALSE(is_positive_definite(mat({{1, 2}, {2, 1}})));
  auto z = signature(mat({{0, 0}, {0, -3}}));
  EXPECT_EQ(z.negative, 1u);
  EXPECT_EQ(z.zero, 1u);
}

TEST(Linalg, RandomNullspacesAreKernels) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Matrix a(3, 5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 5; ++j) a(i, j) = oracle::small(rng, -2, 2);
    auto ns = nullspace(a);
    EXPECT_EQ(ns.size() + rank(a), 5u);
    for (const auto& v : ns) EXPECT_TRUE(is_zero(a * v));
  }
}

TEST(Algebra, CommutatorOfZeroProductIsAbelian) {
  auto lie = commutator_bracket(BilinearProduct(3));
  EXPECT_TRUE(lie.is_abelian());
  EXPECT_EQ(lie.dim(), 3u);
}

TEST(Algebra, HeisenbergProductBracket) {
  auto lie = commutator_bracket(BilinearProduct(oracle::from_entries(3, {{0, 1, 2, 1}}, false)));
  EXPECT_EQ(lie(0, 1, 2), 1);
  EXPECT_EQ(lie(1, 0, 2), -1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        if (!((i == 0 && j == 1) || (i == 1 && j == 0)) || k != 2) EXPECT_EQ(lie(i, j, k), 0);
}

TEST(Algebra, MatrixAlgebraGivesGl2) {
  auto e = catalog::mat2();
  ASSERT_TRUE(e.product);
  EXPECT_TRUE(e.product->is_associative());
  auto idx = [](std::size_t i, std::size_t j) { return i * 2 + j; };
  // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          Vector want(4);
          if (j == k) want[idx(i, l)] += 1;
          if (l == i) want[idx(k, j)] -= 1;
          EXPECT_EQ(e.lie.bracket(unit_vector(4, idx(i, j)), unit_vector(4, idx(k, l))), want);
        }
}

TEST(Algebra, JacobiDefect) {
  EXPECT_TRUE(jacobi_defect(catalog::so3().lie.table()).is_zero());
  EXPECT_TRUE(jacobi_defect(Table3(3)).is_zero());
  Table3 bad = oracle::from_entries(3, {{0, 1, 0, 1}, {1, 2, 0, 1}, {0, 2, 1, 1}}, true);
  auto d = jacobi_defect(bad);
  EXPECT_FALSE(d.is_zero());
  // Σ_cyc [[x,y],z] = −Σ_cyc [x,[y,z]] for a skew table
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        Vector x = oracle::e(3, i), y = oracle::e(3, j), z = oracle::e(3, k);
        Vector want = oracle::plus(oracle::plus(oracle::mul(bad, oracle::mul(bad, x, y), z), oracle::mul(bad, oracle::mul(bad, y, z), x)),
                                   oracle::mul(bad, oracle::mul(bad, z, x), y));
        for (std::size_t l = 0; l < 3; ++l) {
          EXPECT_EQ(d(i, j, k, l), want[l]);
          EXPECT_EQ(d(i, j, k, l), -oracle::jacobiator(bad, i, j, k, l));
        }
      }
  EXPECT_THROW(LieAlgebra{bad}, JacobiViolation);
  try {
    LieAlgebra{bad};
  } catch (const JacobiViolation& e) {
    auto t = e.triple();
    bool nonzero = false;
    for (std::size_t l = 0; l < 3; ++l) nonzero |= oracle::jacobiator(bad, t[0], t[1], t[2], l) != 0;
    EXPECT_TRUE(nonzero);
  }
}

TEST(Algebra, AssociatorAndKvExamples) {
  EXPECT_TRUE(associator_defect(affine_algebra(1)).is_zero());
  EXPECT_TRUE(associator_defect(BilinearProduct(3)).is_zero());
  auto so3 = catalog::so3().lie;
  BilinearProduct half(Rational(1, 2) * so3.table());
  EXPECT_FALSE(associator_defect(half).is_zero());
  EXPECT_TRUE(kv_anomaly(BilinearProduct(oracle::from_entries(3, {{0, 1, 2, 1}}, false))).is_zero());
  EXPECT_TRUE(kv_anomaly(BilinearProduct(2)).is_zero());
  // KV(x,y,z) = ¼[[x,y],z] = −R(x,y)z for the half bracket.
  auto kv = kv_anomaly(half);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        Vector want = oracle::mul(so3.table(), oracle::mul(so3.table(), oracle::e(3, i), oracle::e(3, j)), oracle::e(3, k));
        for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(kv(i, j, k, l), Rational(1, 4) * want[l]);
      }
}

TEST(Algebra, KillingForms) {
  auto k = killing_form(catalog::so3().lie);
  EXPECT_EQ(k.matrix(), Rational(-2) * Matrix::identity(3));
  EXPECT_TRUE(killing_form(LieAlgebra::abelian(4)).matrix().is_zero());
  auto s = killing_form(catalog::sl2().lie);
  EXPECT_EQ(s(0, 0), 8);
  EXPECT_EQ(s(1, 2), 4);
  EXPECT_EQ(s(2, 1), 4);
  EXPECT_EQ(s(0, 1), 0);
  EXPECT_EQ(s(1, 1), 0);
  EXPECT_EQ(s(2, 2), 0);
}

TEST(AlgebraProperties, KillingFormIsAdInvariant) {
  for (const auto& t : oracle::lie_pool(4)) {
    LieAlgebra lie(t);
    auto k = killing_form(lie);
    const std::size_t m = lie.dim();
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t z = 0; z < m; ++z) {
          Vector ex = unit_vector(m, x), ey = unit_vector(m, y), ez = unit_vector(m, z);
          EXPECT_EQ(k.eval(lie.bracket(ex, ey), ez) + k.eval(ey, lie.bracket(ex, ez)), 0);
        }
  }
}

TEST(AlgebraProperties, KvAndTorsionFreeIffFlat) {
  std::mt19937_64 rng(101);
  std::size_t flat_seen = 0;
  for (int t = 0; t < 120; ++t) {
    Table3 gamma;
    if (t % 2 == 0) {
      gamma = oracle::random_rebased(oracle::kv_pool(), rng);
    } else {
      std::uniform_int_distribution<std::size_t> dim(1, 4);
      std::size_t m = dim(rng);
      gamma = Table3(m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k) gamma(i, j, k) = oracle::small(rng, -1, 1) * oracle::small(rng, 0, 1);
    }
    BilinearProduct p(gamma);
    bool kv = kv_anomaly(p).is_zero();
    EXPECT_EQ(kv, oracle::is_kv(gamma));
    EXPECT_EQ(kv, p.is_kv());
    if (!oracle::jacobi_holds(oracle::commutator(gamma))) {
      EXPECT_FALSE(kv);
      EXPECT_THROW(commutator_bracket(p), JacobiViolation);
      continue;
    }
    // with the commutator as base, torsion vanishes identically
    InvariantConnection c(commutator_bracket(p), p);
    EXPECT_TRUE(torsion(c).is_zero());
    bool flat = curvature(c).is_zero();
    EXPECT_EQ(kv, flat);
    flat_seen += flat;
  }
  EXPECT_GT(flat_seen, 50u);
}

TEST(AlgebraProperties, AssociativeImpliesKv) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    BilinearProduct p(oracle::random_rebased(oracle::associative_pool(), rng));
    EXPECT_TRUE(associator_defect(p).is_zero());
    EXPECT_TRUE(p.is_associative());
    EXPECT_TRUE(kv_anomaly(p).is_zero());
    EXPECT_NO_THROW(commutator_bracket(p));
  }
}

TEST(AlgebraProperties, ChangeBasisMatchesOracle) {
  std::mt19937_64 rng(8);
  for (const auto& t : oracle::kv_pool()) {
    Matrix p = oracle::random_unimodular(rng, t.dim());
    Table3 a = change_basis(t, p), b = oracle::rebase(t, p);
    EXPECT_TRUE((a - b).is_zero());
  }
  EXPECT_THROW(change_basis(Table3(2), Matrix(2, 2)), ShapeMismatch);
}

TEST(Tensor, DefectTensorAccessors) {
  DefectTensor d(2, 4);
  EXPECT_TRUE(d.is_zero());
  EXPECT_FALSE(d.first_nonzero());
  d(1, 0, 1, 1) = Rational(-3, 2);
  EXPECT_EQ(d.max_abs(), Rational(3, 2));
  EXPECT_EQ(*d.first_nonzero(), (std::vector<std::size_t>{1, 0, 1, 1}));
}

TEST(Forms, ConstructionChecksSymmetry) {
  EXPECT_THROW(BilinearForm(mat({{1, 2}, {3, 4}}), Symmetry::symmetric), ShapeMismatch);
  EXPECT_THROW(BilinearForm(mat({{1, 2}, {-2, 0}}), Symmetry::skew), ShapeMismatch);
  BilinearForm g(mat({{2, 1}, {1, 0}}), Symmetry::symmetric);
  EXPECT_EQ(g.eval(Vector{1, 1}, Vector{1, 0}), 3);
  EXPECT_TRUE(g.is_nondegenerate());
  EXPECT_FALSE(g.is_positive_definite());
}

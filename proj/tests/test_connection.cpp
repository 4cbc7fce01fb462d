#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"

using namespace koszul;

namespace {

InvariantConnection heisenberg_kv() { return catalog::heisenberg().connection(); }

}  // namespace

TEST(Cartan, ThreeConnectionsOnSo3) {
  auto so3 = catalog::so3().lie;
  EXPECT_TRUE(cartan_connection(so3, CartanKind::minus).product().is_zero());
  auto zero = cartan_connection(so3, CartanKind::zero);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(zero(i, j, k), Rational(1, 2) * so3(i, j, k));
  EXPECT_TRUE(cartan_connection(LieAlgebra::abelian(3), CartanKind::plus).product().is_zero());
}

TEST(Torsion, Examples) {
  for (const auto& t : oracle::lie_pool(4))
    EXPECT_TRUE(torsion(cartan_connection(LieAlgebra(t), CartanKind::zero)).is_zero());
  auto so3 = catalog::so3().lie;
  auto tm = torsion(cartan_connection(so3, CartanKind::minus));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(tm(i, j, k), -so3(i, j, k));
  EXPECT_TRUE(torsion(heisenberg_kv()).is_zero());
}

TEST(Curvature, Examples) {
  EXPECT_TRUE(curvature(InvariantConnection(LieAlgebra::abelian(3), BilinearProduct(3))).is_zero());
  auto so3 = catalog::so3().lie;
  auto r = curvature(cartan_connection(so3, CartanKind::zero));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        Vector want = oracle::mul(so3.table(), oracle::mul(so3.table(), oracle::e(3, i), oracle::e(3, j)), oracle::e(3, k));
        for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(r(i, j, k, l), Rational(-1, 4) * want[l]);
      }
  EXPECT_TRUE(curvature(heisenberg_kv()).is_zero());
}

TEST(Flatness, CertificateNamesFailingTensor) {
  EXPECT_TRUE(is_locally_flat(heisenberg_kv()).flat);
  EXPECT_TRUE(is_locally_flat(InvariantConnection(LieAlgebra::abelian(2), BilinearProduct(2))).flat);
  auto c = is_locally_flat(cartan_connection(catalog::so3().lie, CartanKind::zero));
  EXPECT_FALSE(c.flat);
  EXPECT_EQ(c.failing_tensor, "curvature");
  EXPECT_EQ(c.index, (std::vector<std::size_t>{0, 1, 0, 1}));  // R(e1,e2)e1 has an e2 component
  auto t = is_locally_flat(cartan_connection(catalog::so3().lie, CartanKind::minus));
  EXPECT_EQ(t.failing_tensor, "torsion");
}

TEST(AmariDual, Examples) {
  std::mt19937_64 rng(3);
  InvariantConnection zero(LieAlgebra::abelian(3), BilinearProduct(3));
  EXPECT_EQ(amari_dual(zero, BilinearForm(oracle::random_metric(rng, 3), Symmetry::symmetric)), zero);
  auto so3 = catalog::so3().lie;
  auto plus = cartan_connection(so3, CartanKind::plus);
  EXPECT_EQ(amari_dual(plus, killing_form(so3)), plus);
  Matrix deg(2, 2);
  deg(0, 0) = 1;
  EXPECT_THROW(amari_dual(InvariantConnection(LieAlgebra::abelian(2), BilinearProduct(2)),
                          BilinearForm(deg, Symmetry::symmetric)),
               SingularMetric);
}

TEST(AmariDual, PropertiesOnRandomInputs) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    Table3 bracket = oracle::random_rebased(oracle::lie_pool(4), rng);
    Table3 gamma = oracle::random_torsion_free(bracket, rng);
    Matrix g = oracle::random_metric(rng, bracket.dim());
    InvariantConnection c{LieAlgebra(bracket), BilinearProduct(gamma)};
    BilinearForm gf(g, Symmetry::symmetric);
    auto d = amari_dual(c, gf);
    EXPECT_TRUE((d.product().table() - oracle::dual(gamma, g)).is_zero());
    EXPECT_EQ(amari_dual(d, gf), c);
    // g(∇^g_X Y, Z) + g(Y, ∇_X Z) = 0
    const std::size_t m = c.dim();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
          Vector x = unit_vector(m, i), y = unit_vector(m, j), z = unit_vector(m, k);
          EXPECT_EQ(gf.eval(d.product().multiply(x, y), z) + gf.eval(y, c.product().multiply(x, z)), 0);
        }
    // kv_anomaly = −curvature for torsion-free connections
    auto kv = kv_anomaly(c.product());
    auto r = curvature(c);
    EXPECT_TRUE((kv + r).is_zero());
    // α-affinity
    Rational a = oracle::small(rng, -4, 4) / Rational(3);
    Table3 lhs = alpha_connection(c, d, a).product().table() + alpha_connection(c, d, -a).product().table();
    Table3 rhs = Rational(2) * alpha_connection(c, d, 0).product().table();
    EXPECT_TRUE((lhs - rhs).is_zero());
  }
}

TEST(AmariDual, ParallelMetricIsSelfDual) {
  // so(3) with ∇⁰ keeps the Killing form parallel.
  auto so3 = catalog::so3().lie;
  auto c = cartan_connection(so3, CartanKind::zero);
  auto k = killing_form(so3);
  ASSERT_TRUE(is_parallel(k, c));
  EXPECT_EQ(amari_dual(c, k), c);
  EXPECT_EQ(is_torsion_free(amari_dual(c, k)), is_torsion_free(c));
  EXPECT_TRUE(oracle::parallel(c.product().table(), k.matrix()));
}

TEST(AlphaConnection, Endpoints) {
  std::mt19937_64 rng(23);
  Table3 bracket = catalog::heisenberg().lie.table();
  InvariantConnection c{LieAlgebra(bracket), BilinearProduct(oracle::random_torsion_free(bracket, rng))};
  auto d = amari_dual(c, BilinearForm(oracle::random_metric(rng, 3), Symmetry::symmetric));
  EXPECT_EQ(alpha_connection(c, d, 1), c);
  EXPECT_EQ(alpha_connection(c, d, -1), d);
  Table3 mean = Rational(1, 2) * (c.product().table() + d.product().table());
  EXPECT_TRUE((alpha_connection(c, d, 0).product().table() - mean).is_zero());
}

TEST(Connection, ShapeMismatch) {
  EXPECT_THROW(InvariantConnection(LieAlgebra::abelian(2), BilinearProduct(3)), ShapeMismatch);
}

TEST(ConnectionProperties, FlatnessMatchesOracle) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    Table3 bracket = oracle::random_rebased(oracle::lie_pool(3), rng);
    Table3 gamma = t % 3 == 0 ? oracle::random_torsion_free(bracket, rng) : Rational(t % 3 - 1, 2) * bracket;
    InvariantConnection c{LieAlgebra(bracket), BilinearProduct(gamma)};
    EXPECT_EQ(is_locally_flat(c).flat, oracle::flat(bracket, gamma));
    EXPECT_EQ(is_torsion_free(c), oracle::torsion_free(bracket, gamma));
  }
}

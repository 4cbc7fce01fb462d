#pragma once

// Built-in Lie algebras, products and metrics used by the examples and the
// command line.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "koszul/algebra.hpp"
#include "koszul/connection.hpp"
#include "koszul/errors.hpp"
#include "koszul/flat_models.hpp"
#include "koszul/forms.hpp"
#include "koszul/invariants.hpp"

namespace koszul {

struct CatalogEntry {
  std::string name;
  LieAlgebra lie;
  /// A product whose commutator is the bracket (KV or associative), if any.
  std::optional<BilinearProduct> product;
  BilinearForm metric;
  /// Torsion-free connection parallelizing a symplectic form, if known.
  std::optional<InvariantConnection> symplectic;
  std::optional<BilinearForm> symplectic_form;

  /// The product as a connection, or the Cartan 0-connection without one.
  InvariantConnection connection() const {
    if (product) return InvariantConnection(lie, *product);
    return cartan_connection(lie, CartanKind::zero);
  }
};

namespace catalog {

inline Table3 bracket_table(std::size_t m, const std::vector<std::array<int, 4>>& entries) {
  Table3 c(m);
  for (const auto& [i, j, k, v] : entries) {
    c(i, j, k) = v;
    c(j, i, k) = -v;
  }
  return c;
}

inline CatalogEntry abelian(std::size_t m) {
  CatalogEntry e{"abelian:" + std::to_string(m), LieAlgebra::abelian(m), BilinearProduct(m),
                 BilinearForm::identity(m), std::nullopt, std::nullopt};
  if (m % 2 == 0 && m > 0) {
    Matrix w(m, m);
    for (std::size_t i = 0; i < m; i += 2) {
      w(i, i + 1) = 1;
      w(i + 1, i) = -1;
    }
    e.symplectic_form = BilinearForm(w, Symmetry::skew);
    e.symplectic = InvariantConnection(e.lie, BilinearProduct(m));
  }
  return e;
}

/// [x,y] = z with the KV product x·y = z.
inline CatalogEntry heisenberg() {
  Table3 p(3);
  p(0, 1, 2) = 1;
  return {"heisenberg", LieAlgebra(bracket_table(3, {{0, 1, 2, 1}})), BilinearProduct(p),
          BilinearForm::identity(3), std::nullopt, std::nullopt};
}

/// [e1,e2] = e3 and cyclic.
inline CatalogEntry so3() {
  return {"so3", LieAlgebra(bracket_table(3, {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}})), std::nullopt,
          BilinearForm::identity(3), std::nullopt, std::nullopt};
}

/// Basis (h, e, f): [h,e] = 2e, [h,f] = −2f, [e,f] = h.
inline CatalogEntry sl2() {
  return {"sl2", LieAlgebra(bracket_table(3, {{0, 1, 1, 2}, {0, 2, 2, -2}, {1, 2, 0, 1}})), std::nullopt,
          BilinearForm::identity(3), std::nullopt, std::nullopt};
}

/// [x,y] = y with the KV product x·y = y.
inline CatalogEntry aff1() {
  Table3 p(2);
  p(0, 1, 1) = 1;
  CatalogEntry e{"aff1", LieAlgebra(bracket_table(2, {{0, 1, 1, 1}})), BilinearProduct(p),
                 BilinearForm::identity(2), std::nullopt, std::nullopt};
  Matrix w(2, 2);
  w(0, 1) = 1;
  w(1, 0) = -1;
  e.symplectic_form = BilinearForm(w, Symmetry::skew);
  e.symplectic = symplectic_connection(e.lie, *e.symplectic_form);
  return e;
}

/// The affine algebra of flat ℝ^m with its commutator Lie algebra.
inline CatalogEntry affine(std::size_t m) {
  BilinearProduct p = affine_algebra(m);
  LieAlgebra lie = commutator_bracket(p);
  return {"affine:" + std::to_string(m), lie, p, BilinearForm::identity(p.dim()), std::nullopt, std::nullopt};
}

/// 2×2 matrices, basis E11, E12, E21, E22, with the gl(2) bracket.
inline CatalogEntry mat2() {
  Table3 p(4);
  auto idx = [](std::size_t i, std::size_t j) { return i * 2 + j; };
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t l = 0; l < 2; ++l) p(idx(i, j), idx(j, l), idx(i, l)) = 1;
  BilinearProduct prod(p);
  return {"mat2", commutator_bracket(prod), prod, BilinearForm::identity(4), std::nullopt, std::nullopt};
}

inline std::vector<std::string> names() {
  return {"abelian:<m>", "heisenberg", "so3", "sl2", "aff1", "affine:<m>", "mat2"};
}

}  // namespace catalog

/// Structural checks every entry must pass: the product is KV with the
/// bracket as commutator, and the symplectic data is parallel.
inline void validate(const CatalogEntry& e) {
  if (e.product) {
    InvariantConnection c(e.lie, *e.product);
    if (!is_torsion_free(c)) throw ConformanceMismatch(e.name + ": product commutator differs from bracket");
    if (!e.product->is_kv()) throw ConformanceMismatch(e.name + ": product is not KV");
  }
  if (e.symplectic && (!is_torsion_free(*e.symplectic) || !is_parallel(*e.symplectic_form, *e.symplectic)))
    throw ConformanceMismatch(e.name + ": symplectic connection fails its checks");
}

inline CatalogEntry catalog_entry_unchecked(const std::string& name) {
  auto sized = [&](const std::string& prefix) -> std::optional<std::size_t> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string rest = name.substr(prefix.size());
    if (rest.empty() || rest.size() > 2 || rest.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad size in catalog name '" + name + "'");
    return static_cast<std::size_t>(std::stoul(rest));
  };
  if (name == "heisenberg") return catalog::heisenberg();
  if (name == "so3") return catalog::so3();
  if (name == "sl2") return catalog::sl2();
  if (name == "aff1") return catalog::aff1();
  if (name == "mat2") return catalog::mat2();
  if (auto m = sized("abelian:")) return catalog::abelian(*m);
  if (auto m = sized("affine:")) {
    if (*m > 4) throw DomainViolation("affine catalog entries are limited to m <= 4");
    return catalog::affine(*m);
  }
  throw ParseError("unknown catalog entry '" + name + "'");
}

inline CatalogEntry catalog_entry(const std::string& name) {
  CatalogEntry e = catalog_entry_unchecked(name);
  validate(e);
  return e;
}

}  // namespace koszul

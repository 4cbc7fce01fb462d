#pragma once

// JSON formats. Rationals are written as "p/q" strings and read from
// strings or integer literals.
//
//   algebra:    {"dim": m, "bracket": [[i, j, k, "c"], ...]}   (skew completion)
//   product:    {"dim": m, "product": [[i, j, k, "v"], ...]}
//   connection: {"algebra": <algebra>, "gamma": [[i, j, k, "v"], ...]}
//   form:       {"dim": m, "symmetry": "symmetric|skew|general", "matrix": [[...], ...]}
//   symbol:     {"v": m, "w": w, "basis": [[w*m row-major entries], ...]}
//   ideal:      {"basis": [[...], ...]}

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "koszul/algebra.hpp"
#include "koszul/connection.hpp"
#include "koszul/errors.hpp"
#include "koszul/forms.hpp"
#include "koszul/rational.hpp"
#include "koszul/spencer.hpp"

namespace koszul::io {

using json = nlohmann::ordered_json;

inline Rational rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(std::to_string(v.get<std::int64_t>()));
  if (v.is_number_unsigned()) return Rational(std::to_string(v.get<std::uint64_t>()));
  throw ParseError("expected a rational as \"p/q\" or an integer, got " + v.dump());
}

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(to_json(m.row(r)));
  return rows;
}

inline Vector vector_from_json(const json& v) {
  if (!v.is_array()) throw ParseError("expected an array of rationals");
  Vector out;
  for (const auto& x : v) out.push_back(rational_from_json(x));
  return out;
}

inline Matrix matrix_from_json(const json& v, std::size_t rows, std::size_t cols) {
  if (!v.is_array() || v.size() != rows) throw ShapeMismatch("matrix must have " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!v[r].is_array() || v[r].size() != cols)
      throw ShapeMismatch("matrix row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(v[r][c]);
  }
  return m;
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline std::size_t dim_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw ParseError(std::string("missing or invalid '") + key + "'");
  return j[key].get<std::size_t>();
}

namespace detail {

inline std::vector<std::pair<std::array<std::size_t, 3>, Rational>> entries(const json& list, std::size_t m,
                                                                             const char* what) {
  if (!list.is_array()) throw ParseError(std::string(what) + " must be an array of [i, j, k, value]");
  std::vector<std::pair<std::array<std::size_t, 3>, Rational>> out;
  for (const auto& e : list) {
    if (!e.is_array() || e.size() != 4) throw ParseError(std::string(what) + " entries are [i, j, k, value]");
    std::array<std::size_t, 3> idx{};
    for (std::size_t n = 0; n < 3; ++n) {
      if (!e[n].is_number_integer() || e[n].get<long long>() < 0 || e[n].get<std::size_t>() >= m)
        throw ShapeMismatch(std::string(what) + " index out of range: " + e.dump());
      idx[n] = e[n].get<std::size_t>();
    }
    out.emplace_back(idx, rational_from_json(e[3]));
  }
  return out;
}

inline json table_entries(const Table3& t, bool upper_only) {
  json list = json::array();
  const std::size_t m = t.dim();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = upper_only ? i + 1 : 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (t(i, j, k) != 0) list.push_back(json::array({i, j, k, to_string(t(i, j, k))}));
  return list;
}

}  // namespace detail

/// Bracket entries [i, j, k, c] set c^k_{ij}; the (j, i) entry is filled in
/// as −c unless given, and a conflicting pair is a ParseError.
inline LieAlgebra algebra_from_json(const json& j) {
  const std::size_t m = dim_field(j, "dim");
  Table3 c(m);
  std::vector<std::vector<char>> set(m * m, std::vector<char>(m, 0));
  for (const auto& [idx, v] : detail::entries(j.value("bracket", json::array()), m, "bracket")) {
    auto [a, b, k] = idx;
    if (a == b && v != 0) throw ParseError("bracket [e_i, e_i] must vanish");
    if (set[a * m + b][k] && c(a, b, k) != v) throw ParseError("conflicting bracket entries");
    if (set[b * m + a][k] && c(b, a, k) != -v)
      throw ParseError("bracket entries at (" + std::to_string(a) + "," + std::to_string(b) + ") and (" +
                       std::to_string(b) + "," + std::to_string(a) + ") are not skew");
    c(a, b, k) = v;
    c(b, a, k) = -v;
    set[a * m + b][k] = set[b * m + a][k] = 1;
  }
  return LieAlgebra(std::move(c));
}

inline json to_json(const LieAlgebra& l) {
  return json{{"dim", l.dim()}, {"bracket", detail::table_entries(l.table(), true)}};
}

inline BilinearProduct product_from_json(const json& j) {
  const std::size_t m = dim_field(j, "dim");
  Table3 t(m);
  for (const auto& [idx, v] : detail::entries(j.value("product", json::array()), m, "product"))
    t(idx[0], idx[1], idx[2]) = v;
  return BilinearProduct(std::move(t));
}

inline json to_json(const BilinearProduct& p) {
  return json{{"dim", p.dim()}, {"product", detail::table_entries(p.table(), false)}};
}

inline InvariantConnection connection_from_json(const json& j) {
  if (!j.contains("algebra")) throw ParseError("connection needs an 'algebra' object");
  LieAlgebra lie = algebra_from_json(j["algebra"]);
  Table3 t(lie.dim());
  for (const auto& [idx, v] : detail::entries(j.value("gamma", json::array()), lie.dim(), "gamma"))
    t(idx[0], idx[1], idx[2]) = v;
  return InvariantConnection(std::move(lie), BilinearProduct(std::move(t)));
}

inline json to_json(const InvariantConnection& c) {
  return json{{"algebra", to_json(c.base())}, {"gamma", detail::table_entries(c.product().table(), false)}};
}

inline Symmetry symmetry_from_string(const std::string& s) {
  if (s == "symmetric") return Symmetry::symmetric;
  if (s == "skew") return Symmetry::skew;
  if (s == "general") return Symmetry::general;
  throw ParseError("unknown symmetry '" + s + "'");
}

inline BilinearForm form_from_json(const json& j) {
  const std::size_t m = dim_field(j, "dim");
  Symmetry sym = symmetry_from_string(j.value("symmetry", std::string("symmetric")));
  if (!j.contains("matrix")) throw ParseError("form needs a 'matrix'");
  return BilinearForm(matrix_from_json(j["matrix"], m, m), sym);
}

inline json to_json(const BilinearForm& f) {
  return json{{"dim", f.dim()}, {"symmetry", to_string(f.symmetry())}, {"matrix", to_json(f.matrix())}};
}

inline SymbolSpace symbol_from_json(const json& j) {
  const std::size_t v = dim_field(j, "v"), w = dim_field(j, "w");
  std::vector<Matrix> maps;
  for (const auto& b : j.value("basis", json::array())) {
    Vector flat = vector_from_json(b);
    if (flat.size() != v * w) throw ShapeMismatch("symbol basis entries need w*v values");
    Matrix a(w, v);
    for (std::size_t r = 0; r < w; ++r)
      for (std::size_t c = 0; c < v; ++c) a(r, c) = flat[r * v + c];
    maps.push_back(std::move(a));
  }
  return SymbolSpace::from_maps(v, w, maps);
}

inline json to_json(const SymbolSpace& s) {
  json basis = json::array();
  for (std::size_t b = 0; b < s.dim(); ++b) basis.push_back(to_json(s.map(b).flat()));
  return json{{"v", s.v_dim()}, {"w", s.w_dim()}, {"basis", basis}};
}

inline std::vector<Vector> ideal_from_json(const json& j) {
  std::vector<Vector> out;
  for (const auto& b : j.value("basis", json::array())) out.push_back(vector_from_json(b));
  return out;
}

inline json basis_json(const std::vector<Vector>& basis) {
  json a = json::array();
  for (const auto& b : basis) a.push_back(to_json(b));
  return a;
}

/// 64-bit FNV-1a, used for the inputs digest of reports.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 14695981039346656037ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace koszul::io

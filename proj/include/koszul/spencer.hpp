#pragma once

// Symbol calculus for subspaces a ⊆ Hom(V,W): prolongations, Cartan's test,
// the Koszul–Spencer complex, and the involutivity verdict.
//
// The q-th prolongation lives in S^{q+1}V* ⊗ W. A symmetric tensor T is
// stored by its values T(e_{i_1},..,e_{i_k}) on sorted multi-indices, times
// the W component, so contracting with e_j is a lookup at sorted(j, ..).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "koszul/cohomology.hpp"
#include "koszul/errors.hpp"
#include "koszul/linalg.hpp"
#include "koszul/rational.hpp"

namespace koszul {

namespace detail {

/// Sorted multi-indices of size k over {0..m−1}, in lexicographic order.
inline std::vector<std::vector<std::size_t>> multisets(std::size_t m, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(k);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == k) {
      out.push_back(t);
      return;
    }
    for (std::size_t x = start; x < m; ++x) {
      t[pos] = x;
      self(self, pos + 1, x);
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Index lookup for the multisets of one size.
class MultisetIndex {
 public:
  MultisetIndex(std::size_t m, std::size_t k) : list_(multisets(m, k)) {
    for (std::size_t n = 0; n < list_.size(); ++n) index_[list_[n]] = n;
  }
  std::size_t size() const noexcept { return list_.size(); }
  const std::vector<std::size_t>& operator[](std::size_t n) const { return list_[n]; }
  std::size_t at(std::vector<std::size_t> t) const {
    std::sort(t.begin(), t.end());
    return index_.at(t);
  }

 private:
  std::vector<std::vector<std::size_t>> list_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
};

}  // namespace detail

/// Subspace of S^order V* ⊗ W; order 1 is a subspace of Hom(V,W).
class SymbolSpace {
 public:
  SymbolSpace() = default;
  SymbolSpace(std::size_t v, std::size_t w, std::size_t order, std::vector<Vector> basis)
      : v_(v), w_(w), order_(order) {
    const std::size_t n = ambient_dim();
    for (const auto& b : basis)
      if (b.size() != n) throw ShapeMismatch("symbol basis vector has the wrong length");
    basis_ = basis.empty() ? basis : row_basis(basis, n);
  }

  /// a ⊆ Hom(V,W) spanned by w×v matrices (column c is the image of e_c).
  static SymbolSpace from_maps(std::size_t v, std::size_t w, const std::vector<Matrix>& maps) {
    std::vector<Vector> basis;
    for (const auto& a : maps) {
      if (a.rows() != w || a.cols() != v) throw ShapeMismatch("symbol map must be w x v");
      Vector b(v * w);
      for (std::size_t c = 0; c < v; ++c)
        for (std::size_t r = 0; r < w; ++r) b[c * w + r] = a(r, c);
      basis.push_back(std::move(b));
    }
    return SymbolSpace(v, w, 1, std::move(basis));
  }

  static SymbolSpace full(std::size_t v, std::size_t w) {
    std::vector<Vector> basis;
    for (std::size_t n = 0; n < v * w; ++n) basis.push_back(unit_vector(v * w, n));
    return SymbolSpace(v, w, 1, std::move(basis));
  }

  static SymbolSpace zero(std::size_t v, std::size_t w) { return SymbolSpace(v, w, 1, {}); }

  std::size_t v_dim() const noexcept { return v_; }
  std::size_t w_dim() const noexcept { return w_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  std::size_t ambient_dim() const { return detail::multisets(v_, order_).size() * w_; }

  /// Basis element b as a w×v matrix (order 1 only).
  Matrix map(std::size_t b) const {
    if (order_ != 1) throw DomainViolation("only first-order symbols are maps V -> W");
    Matrix a(w_, v_);
    for (std::size_t c = 0; c < v_; ++c)
      for (std::size_t r = 0; r < w_; ++r) a(r, c) = basis_[b][c * w_ + r];
    return a;
  }

  bool contains(const SymbolSpace& other) const {
    if (other.v_ != v_ || other.w_ != w_ || other.order_ != order_) return false;
    for (const auto& b : other.basis_)
      if (!in_span(basis_, b, ambient_dim())) return false;
    return true;
  }

 private:
  std::size_t v_ = 0, w_ = 0, order_ = 1;
  std::vector<Vector> basis_;
};

namespace detail {

/// Contraction T ↦ T(e_j, ·) from S^k V*⊗W to S^{k−1} V*⊗W as a matrix.
inline Matrix contraction_matrix(std::size_t m, std::size_t w, std::size_t k, std::size_t j) {
  MultisetIndex src(m, k), dst(m, k - 1);
  Matrix c(dst.size() * w, src.size() * w);
  for (std::size_t n = 0; n < dst.size(); ++n) {
    auto t = dst[n];
    t.push_back(j);
    std::size_t s = src.at(t);
    for (std::size_t r = 0; r < w; ++r) c(n * w + r, s * w + r) = 1;
  }
  return c;
}

/// Rows spanning the annihilator of span(basis) in Q^n.
inline std::vector<Vector> annihilator(const std::vector<Vector>& basis, std::size_t n) {
  if (basis.empty()) {
    std::vector<Vector> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
    return all;
  }
  return nullspace(Matrix::from_rows(basis, n));
}

}  // namespace detail

/// a^{(1)} = Hom(V,a) ∩ S^{k+1}V*⊗W: tensors all of whose contractions lie in a.
inline SymbolSpace prolong(const SymbolSpace& a) {
  const std::size_t m = a.v_dim(), w = a.w_dim(), k = a.order();
  detail::MultisetIndex next(m, k + 1);
  const std::size_t n = next.size() * w;
  auto ann = detail::annihilator(a.basis(), a.ambient_dim());
  if (ann.empty() || n == 0) {
    std::vector<Vector> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
    return SymbolSpace(m, w, k + 1, std::move(all));
  }
  Matrix ann_rows = Matrix::from_rows(ann, a.ambient_dim());
  Matrix cons(0, n);
  for (std::size_t j = 0; j < m; ++j) {
    Matrix c = ann_rows * detail::contraction_matrix(m, w, k + 1, j);
    for (std::size_t r = 0; r < c.rows(); ++r) cons.append_row(c.row(r));
  }
  return SymbolSpace(m, w, k + 1, nullspace(cons));
}

struct CartanTestResult {
  std::size_t prolongation_dim = 0;
  std::size_t sum_aj = 0;
  std::vector<std::size_t> aj;  // dim a_j for j = 0..m
  bool quasi_regular = false;
};

/// Cartan's test for the basis given by the columns of `frame`.
inline CartanTestResult cartan_test(const SymbolSpace& a, const Matrix& frame) {
  const std::size_t m = a.v_dim(), w = a.w_dim();
  if (a.order() != 1) throw DomainViolation("Cartan's test applies to first-order symbols");
  if (frame.rows() != m || frame.cols() != m || rank(frame) != m)
    throw ShapeMismatch("Cartan test needs a basis of V");
  CartanTestResult out;
  out.prolongation_dim = prolong(a).dim();
  // Coordinates x over a's basis with (Σ x_b A_b) v_i = 0 for i ≤ j.
  Matrix cons(0, a.dim());
  for (std::size_t j = 0; j <= m; ++j) {
    if (j > 0) {
      const Vector v = frame.col(j - 1);
      for (std::size_t r = 0; r < w; ++r) {
        Vector row(a.dim());
        for (std::size_t b = 0; b < a.dim(); ++b)
          for (std::size_t c = 0; c < m; ++c)
            if (v[c] != 0) row[b] += a.basis()[b][c * w + r] * v[c];
        cons.append_row(row);
      }
    }
    std::size_t d = a.dim() == 0 ? 0 : (cons.rows() == 0 ? a.dim() : nullspace(cons).size());
    out.aj.push_back(d);
    out.sum_aj += d;
  }
  if (out.prolongation_dim > out.sum_aj)
    throw ConformanceMismatch("Cartan inequality violated: dim a^(1) = " +
                              std::to_string(out.prolongation_dim) + " > " +
                              std::to_string(out.sum_aj));
  out.quasi_regular = out.prolongation_dim == out.sum_aj;
  return out;
}

inline CartanTestResult cartan_test(const SymbolSpace& a) {
  return cartan_test(a, Matrix::identity(a.v_dim()));
}

/// Standard basis first, then seeded random integer frames with entries in
/// [−5, 5].
inline std::optional<Matrix> find_quasi_regular_basis(const SymbolSpace& a, std::size_t trials = 64,
                                                      std::uint64_t seed = 24301) {
  if (trials == 0) throw DomainViolation("trials must be at least 1");
  const std::size_t m = a.v_dim();
  Matrix frame = Matrix::identity(m);
  if (cartan_test(a, frame).quasi_regular) return frame;
  for (std::size_t t = 1; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    do {
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) frame(r, c) = random_small(rng, -5, 5);
    } while (rank(frame) != m);
    if (cartan_test(a, frame).quasi_regular) return frame;
  }
  return std::nullopt;
}

struct SpencerCell {
  std::size_t p = 0, q = 0;
  std::size_t cochains = 0;
  std::size_t h = 0;
};

struct SpencerReport {
  std::size_t max_p = 3, max_q = 2;
  /// dim a^{(q)} for q = 0..max_q+1.
  std::vector<std::size_t> prolongation_dims;
  std::vector<SpencerCell> cells;
  bool d_squared_zero = false;

  std::size_t h(std::size_t p, std::size_t q) const {
    for (const auto& c : cells)
      if (c.p == p && c.q == q) return c.h;
    throw DomainViolation("H^{p,q} outside the computed window");
  }
  /// First (p > 0, q) with H^{p,q} ≠ 0.
  std::optional<std::pair<std::size_t, std::size_t>> nonvanishing() const {
    for (const auto& c : cells)
      if (c.p > 0 && c.h != 0) return std::make_pair(c.p, c.q);
    return std::nullopt;
  }
};

namespace detail {

/// d : Λ^p V* ⊗ S^k V* ⊗ W → Λ^{p+1} V* ⊗ S^{k−1} V* ⊗ W,
/// (dω)(v_0..v_p)(u..) = Σ_i (−1)^i ω(..v̂_i..)(v_i, u..).
inline Matrix spencer_d(std::size_t m, std::size_t w, std::size_t p, std::size_t k) {
  auto src_l = increasing_tuples(m, p);
  auto dst_l = increasing_tuples(m, p + 1);
  std::map<std::vector<std::size_t>, std::size_t> src_index;
  for (std::size_t n = 0; n < src_l.size(); ++n) src_index[src_l[n]] = n;
  MultisetIndex src_s(m, k), dst_s(m, k - 1);
  const std::size_t src_block = src_s.size() * w, dst_block = dst_s.size() * w;
  Matrix d(dst_l.size() * dst_block, src_l.size() * src_block);
  for (std::size_t a = 0; a < dst_l.size(); ++a) {
    const auto& jt = dst_l[a];
    for (std::size_t i = 0; i <= p; ++i) {
      std::vector<std::size_t> rest;
      for (std::size_t s = 0; s <= p; ++s)
        if (s != i) rest.push_back(jt[s]);
      std::size_t src_a = src_index.at(rest);
      Rational sign = i % 2 == 0 ? 1 : -1;
      for (std::size_t n = 0; n < dst_s.size(); ++n) {
        auto t = dst_s[n];
        t.push_back(jt[i]);
        std::size_t sn = src_s.at(t);
        for (std::size_t r = 0; r < w; ++r)
          d(a * dst_block + n * w + r, src_a * src_block + sn * w + r) += sign;
      }
    }
  }
  return d;
}

/// Basis of Λ^p V* ⊗ (subspace of S^k V*⊗W) inside the ambient coordinates.
inline std::vector<Vector> tensor_with_forms(std::size_t m, std::size_t p,
                                             const std::vector<Vector>& sub, std::size_t block) {
  const std::size_t nl = increasing_tuples(m, p).size();
  std::vector<Vector> out;
  for (std::size_t a = 0; a < nl; ++a)
    for (const auto& b : sub) {
      Vector v(nl * block);
      for (std::size_t r = 0; r < block; ++r) v[a * block + r] = b[r];
      out.push_back(std::move(v));
    }
  return out;
}

inline std::size_t image_rank(const Matrix& d, const std::vector<Vector>& basis) {
  if (basis.empty()) return 0;
  std::vector<Vector> images;
  for (const auto& b : basis) images.push_back(d * b);
  return span_dim(images, d.rows());
}

}  // namespace detail

/// H^{p,q}(a) on Λ^p V* ⊗ a^{(q)} for p ≤ max_p, q ≤ max_q, where a^{(0)} = a
/// and d lands in Λ^{p+1} V* ⊗ a^{(q−1)} (a^{(−1)} = W).
inline SpencerReport spencer_cohomology(const SymbolSpace& a, std::size_t max_p = 3,
                                        std::size_t max_q = 2) {
  if (a.order() != 1) throw DomainViolation("Spencer cohomology starts from a first-order symbol");
  const std::size_t m = a.v_dim(), w = a.w_dim();
  SpencerReport out;
  out.max_p = max_p;
  out.max_q = max_q;
  std::vector<SymbolSpace> pro{a};
  for (std::size_t q = 1; q <= max_q + 1; ++q) pro.push_back(prolong(pro.back()));
  for (const auto& s : pro) out.prolongation_dims.push_back(s.dim());

  auto block = [&](std::size_t q) { return detail::multisets(m, q + 1).size() * w; };
  auto cochains = [&](std::size_t p, std::size_t q) {
    return detail::tensor_with_forms(m, p, pro[q].basis(), block(q));
  };
  // rank of d restricted to C^{p,q}
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> rank_cache;
  auto d_rank = [&](std::size_t p, std::size_t q) -> std::size_t {
    if (p >= m) return 0;  // Λ^{p+1} = 0
    auto key = std::make_pair(p, q);
    if (auto it = rank_cache.find(key); it != rank_cache.end()) return it->second;
    std::size_t r = detail::image_rank(detail::spencer_d(m, w, p, q + 1), cochains(p, q));
    rank_cache[key] = r;
    return r;
  };

  out.d_squared_zero = true;
  for (std::size_t p = 0; p + 2 <= m && p + 1 <= max_p; ++p)
    for (std::size_t k = 2; k <= max_q + 2; ++k) {
      Matrix dd = detail::spencer_d(m, w, p + 1, k - 1) * detail::spencer_d(m, w, p, k);
      if (!dd.is_zero()) out.d_squared_zero = false;
    }
  if (!out.d_squared_zero) throw ConformanceMismatch("Spencer d∘d is nonzero");

  for (std::size_t p = 0; p <= max_p; ++p)
    for (std::size_t q = 0; q <= max_q; ++q) {
      SpencerCell c;
      c.p = p;
      c.q = q;
      c.cochains = detail::increasing_tuples(m, p).size() * pro[q].dim();
      std::size_t in = p == 0 ? 0 : d_rank(p - 1, q + 1);
      std::size_t outr = d_rank(p, q);
      if (in + outr > c.cochains) throw ConformanceMismatch("Spencer ranks exceed cochain dimension");
      c.h = c.cochains - in - outr;
      out.cells.push_back(c);
    }
  return out;
}

enum class Involutivity { involutive, not_involutive, unknown };

inline std::string to_string(Involutivity v) {
  switch (v) {
    case Involutivity::involutive: return "involutive";
    case Involutivity::not_involutive: return "not-involutive";
    case Involutivity::unknown: return "unknown";
  }
  return "unknown";
}

struct InvolutivityVerdict {
  Involutivity verdict = Involutivity::unknown;
  std::optional<Matrix> quasi_regular_basis;
  std::optional<std::pair<std::size_t, std::size_t>> nonvanishing_cell;
  SpencerReport cohomology;
};

/// Runs the quasi-regular basis search and the Spencer cohomology window
/// and requires them to agree.
inline InvolutivityVerdict is_involutive(const SymbolSpace& a, std::size_t trials = 64,
                                         std::uint64_t seed = 24301) {
  if (a.v_dim() > 4 || a.w_dim() > 4) throw DomainViolation("involutivity check needs v, w <= 4");
  InvolutivityVerdict out;
  out.quasi_regular_basis = find_quasi_regular_basis(a, trials, seed);
  out.cohomology = spencer_cohomology(a);
  out.nonvanishing_cell = out.cohomology.nonvanishing();
  if (out.quasi_regular_basis && out.nonvanishing_cell)
    throw ConformanceMismatch("quasi-regular basis found but H^{" +
                              std::to_string(out.nonvanishing_cell->first) + "," +
                              std::to_string(out.nonvanishing_cell->second) + "} is nonzero");
  if (out.quasi_regular_basis)
    out.verdict = Involutivity::involutive;
  else if (out.nonvanishing_cell)
    out.verdict = Involutivity::not_involutive;
  return out;
}

/// The symbol of the second-order operator whose solutions are the
/// Γ-affine vector fields: zero at order two, so the system is of finite type.
inline SymbolSpace symbol_of_fe_star(std::size_t m) { return SymbolSpace::zero(m, m); }

}  // namespace koszul

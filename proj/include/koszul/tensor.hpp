#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "koszul/errors.hpp"
#include "koszul/linalg.hpp"

namespace koszul {

/// Rank-3 coefficient table T^k_{ij} stored at (i, j, k): the component
/// along e_k of the value on (e_i, e_j). Indices are 0-based.
class Table3 {
 public:
  Table3() = default;
  explicit Table3(std::size_t dim) : dim_(dim), data_(dim * dim * dim) {}

  std::size_t dim() const noexcept { return dim_; }

  Rational& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * dim_ + j) * dim_ + k];
  }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * dim_ + j) * dim_ + k];
  }

  const Vector& flat() const noexcept { return data_; }
  Vector& flat() noexcept { return data_; }

  bool is_zero() const { return koszul::is_zero(data_); }

  friend bool operator==(const Table3&, const Table3&) = default;

  friend Table3 operator+(const Table3& a, const Table3& b) {
    same_dim(a, b);
    Table3 out(a.dim_);
    for (std::size_t n = 0; n < a.data_.size(); ++n) out.data_[n] = a.data_[n] + b.data_[n];
    return out;
  }
  friend Table3 operator-(const Table3& a, const Table3& b) {
    same_dim(a, b);
    Table3 out(a.dim_);
    for (std::size_t n = 0; n < a.data_.size(); ++n) out.data_[n] = a.data_[n] - b.data_[n];
    return out;
  }
  friend Table3 operator*(const Rational& s, const Table3& a) {
    Table3 out(a.dim_);
    for (std::size_t n = 0; n < a.data_.size(); ++n) out.data_[n] = s * a.data_[n];
    return out;
  }

 private:
  static void same_dim(const Table3& a, const Table3& b) {
    if (a.dim_ != b.dim_) throw ShapeMismatch("coefficient tables of different dimension");
  }

  std::size_t dim_ = 0;
  Vector data_;
};

/// Rank-3 or rank-4 defect tensor (torsion, curvature, associator, KV and
/// Jacobi anomalies). Zero norm iff every entry is zero.
class DefectTensor {
 public:
  DefectTensor() = default;
  DefectTensor(std::size_t dim, std::size_t order) : dim_(dim), order_(order) {
    std::size_t n = 1;
    for (std::size_t r = 0; r < order; ++r) n *= dim;
    data_.resize(order == 0 ? 0 : n);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t order() const noexcept { return order_; }
  const Vector& flat() const noexcept { return data_; }

  Rational& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * dim_ + j) * dim_ + k];
  }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * dim_ + j) * dim_ + k];
  }
  Rational& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return data_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return data_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }

  Rational max_abs() const {
    Rational best = 0;
    for (const auto& x : data_)
      if (abs_value(x) > best) best = abs_value(x);
    return best;
  }
  bool is_zero() const { return koszul::is_zero(data_); }

  /// Multi-index of the first nonzero entry in storage order.
  std::optional<std::vector<std::size_t>> first_nonzero() const {
    for (std::size_t n = 0; n < data_.size(); ++n) {
      if (data_[n] == 0) continue;
      std::vector<std::size_t> idx(order_);
      std::size_t rest = n;
      for (std::size_t r = order_; r-- > 0;) {
        idx[r] = rest % dim_;
        rest /= dim_;
      }
      return idx;
    }
    return std::nullopt;
  }

  friend bool operator==(const DefectTensor&, const DefectTensor&) = default;

  friend DefectTensor operator+(const DefectTensor& a, const DefectTensor& b) {
    if (a.dim_ != b.dim_ || a.order_ != b.order_) throw ShapeMismatch("defect tensor shapes differ");
    DefectTensor out(a.dim_, a.order_);
    for (std::size_t n = 0; n < a.data_.size(); ++n) out.data_[n] = a.data_[n] + b.data_[n];
    return out;
  }
  friend DefectTensor operator-(const DefectTensor& a) {
    DefectTensor out(a.dim_, a.order_);
    for (std::size_t n = 0; n < a.data_.size(); ++n) out.data_[n] = -a.data_[n];
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::size_t order_ = 0;
  Vector data_;
};

}  // namespace koszul

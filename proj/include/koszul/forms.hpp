#pragma once

#include <cstddef>
#include <string>

#include "koszul/errors.hpp"
#include "koszul/linalg.hpp"

namespace koszul {

enum class Symmetry { symmetric, skew, general };

inline std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::symmetric: return "symmetric";
    case Symmetry::skew: return "skew";
    case Symmetry::general: return "general";
  }
  return "general";
}

/// Bilinear form g_{ij} = g(e_i, e_j) with a declared symmetry class that
/// the entries are checked against.
class BilinearForm {
 public:
  BilinearForm() = default;
  BilinearForm(Matrix entries, Symmetry sym) : g_(std::move(entries)), sym_(sym) {
    if (!g_.is_square()) throw ShapeMismatch("bilinear form must be square");
    if (sym_ == Symmetry::symmetric && !g_.is_symmetric())
      throw ShapeMismatch("form declared symmetric has asymmetric entries");
    if (sym_ == Symmetry::skew && !g_.is_skew())
      throw ShapeMismatch("form declared skew has non-skew entries");
  }

  static BilinearForm identity(std::size_t m) {
    return BilinearForm(Matrix::identity(m), Symmetry::symmetric);
  }

  std::size_t dim() const noexcept { return g_.rows(); }
  Symmetry symmetry() const noexcept { return sym_; }
  const Matrix& matrix() const noexcept { return g_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }

  Rational eval(const Vector& x, const Vector& y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (y[j] != 0 && g_(i, j) != 0) s += x[i] * g_(i, j) * y[j];
    }
    return s;
  }

  std::size_t rank() const { return koszul::rank(g_); }
  bool is_nondegenerate() const { return rank() == dim(); }
  Signature signature() const { return koszul::signature(g_); }
  bool is_positive_definite() const { return koszul::is_positive_definite(g_); }

  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

 private:
  Matrix g_;
  Symmetry sym_ = Symmetry::general;
};

}  // namespace koszul

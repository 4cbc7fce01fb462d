#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace koszul {

/// Base class for every error raised by the library. `kind()` is the
/// stable identifier used in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define KOSZUL_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

KOSZUL_DEFINE_ERROR(ParseError)
KOSZUL_DEFINE_ERROR(ShapeMismatch)
KOSZUL_DEFINE_ERROR(SingularMetric)
KOSZUL_DEFINE_ERROR(NotKV)
KOSZUL_DEFINE_ERROR(NotAssociative)
KOSZUL_DEFINE_ERROR(NotFlat)
KOSZUL_DEFINE_ERROR(NotTorsionFree)
KOSZUL_DEFINE_ERROR(TorsionMismatch)
KOSZUL_DEFINE_ERROR(NotSelfOrSkewAdjoint)
KOSZUL_DEFINE_ERROR(Unsupported)
KOSZUL_DEFINE_ERROR(DomainViolation)
KOSZUL_DEFINE_ERROR(NonNormalized)
KOSZUL_DEFINE_ERROR(SingularFisher)
KOSZUL_DEFINE_ERROR(ConformanceMismatch)

#undef KOSZUL_DEFINE_ERROR

/// Raised when a skew table fails the Jacobi identity; carries the first
/// basis triple (i, j, k) whose cyclic sum is nonzero.
class JacobiViolation : public Error {
 public:
  JacobiViolation(std::array<std::size_t, 3> triple, const std::string& what)
      : Error("JacobiViolation", what), triple_(triple) {}
  const std::array<std::size_t, 3>& triple() const noexcept { return triple_; }

 private:
  std::array<std::size_t, 3> triple_;
};

/// Raised by simple_right_ideal_check when I·A is not contained in I.
class NotRightIdeal : public Error {
 public:
  NotRightIdeal(std::size_t ideal_index, std::size_t algebra_index,
                const std::string& what)
      : Error("NotRightIdeal", what),
        ideal_index_(ideal_index),
        algebra_index_(algebra_index) {}
  std::size_t ideal_index() const noexcept { return ideal_index_; }
  std::size_t algebra_index() const noexcept { return algebra_index_; }

 private:
  std::size_t ideal_index_;
  std::size_t algebra_index_;
};

}  // namespace koszul

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "koszul/errors.hpp"

namespace koszul {

/// Exact scalar of every algebraic module. mpq_class keeps values in
/// canonical form (reduced, positive denominator) after each operation.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q != 0) into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(mpz_class(s, 10));
    }
    mpz_class num(s.substr(0, slash), 10);
    mpz_class den(s.substr(slash + 1), 10);
    if (den == 0) throw ParseError("zero denominator in rational '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational '" + s + "'");
  }
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str(10);
}

inline Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Uniform rational in [-bound, bound] with a denominator drawn from
/// 1..max_den. Used by every seeded sampler in the library.
inline Rational random_rational(std::mt19937_64& rng, long bound, long max_den) {
  std::uniform_int_distribution<long> den_dist(1, max_den);
  long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(-bound * den, bound * den);
  Rational r(num_dist(rng), den);
  r.canonicalize();
  return r;
}

/// Small integer in [lo, hi] as a rational.
inline Rational random_small(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  return Rational(dist(rng));
}

/// Deterministic per-index seed so that indexed samples are reproducible
/// regardless of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace koszul

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace smallparts {

// mpq_class keeps values canonical (lowest terms, positive denominator,
// zero as 0/1) after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer to_integer(std::int64_t v) {
  Integer z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return z;
}

inline Rational to_rational(std::int64_t v) { return Rational(to_integer(v)); }

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Fits-in-int64 conversion; caller guarantees the range.
inline std::int64_t to_int64(const Integer& z) { return static_cast<std::int64_t>(mpz_get_si(z.get_mpz_t())); }

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace smallparts

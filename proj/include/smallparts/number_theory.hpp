#pragma once

#include <cstdint>
#include <vector>

#include "smallparts/rational.hpp"

namespace smallparts {

/// Kronecker symbol (a/n), fully extended to negative and even n.
int kronecker(std::int64_t a, std::int64_t n);

/// The quadratic character n -> (d/n).
struct Character {
  std::int64_t d = 1;
  int operator()(std::int64_t n) const { return kronecker(d, n); }
  friend bool operator==(const Character&, const Character&) = default;
};

bool is_prime(std::int64_t n);

/// ell^e, throwing on int64 overflow.
std::int64_t checked_pow(std::int64_t ell, int e);

/// v_ell(num) - v_ell(den); throws ZeroInput for x = 0.
std::int64_t ell_adic_valuation(const Rational& x, std::int64_t ell);

/// Least positive d with 24 d = 1 (mod ell^m).
std::int64_t delta(std::int64_t ell, int m);

/// Hurwitz class number by enumerating reduced forms of discriminant -n.
/// H(0) = -1/12.
Rational hurwitz_class_number(std::int64_t n);
std::vector<Rational> hurwitz_table(std::int64_t n_max);

/// floor(k * [SL2(Z) : Gamma0(level)] / 12) for integral weight k = weight_times_2 / 2.
std::int64_t sturm_bound(std::int64_t weight_times_2, std::int64_t level);

std::int64_t sigma1(std::int64_t n);
/// sigma1(0..n_max) with sigma1(0) = 0.
std::vector<std::int64_t> sigma1_table(std::int64_t n_max);

}  // namespace smallparts

#include "smallparts/number_theory.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "smallparts/errors.hpp"

namespace smallparts {

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // Factor out powers of two: (a/2) = 0 for even a, else +1 for a = +-1 mod 8.
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    const std::int64_t r = ((a % 8) + 8) % 8;
    if ((twos % 2 == 1) && (r == 3 || r == 5)) result = -result;
  }
  // n is now odd and positive: Jacobi symbol by reciprocity.
  std::int64_t x = ((a % n) + n) % n;
  std::int64_t y = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::int64_t r = y % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::int64_t checked_pow(std::int64_t ell, int e) {
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(out, ell, &out)) {
      throw Error(ErrorKind::InvalidArgument, "power overflows 64 bits");
    }
  }
  return out;
}

std::int64_t ell_adic_valuation(const Rational& x, std::int64_t ell) {
  if (sgn(x) == 0) throw Error(ErrorKind::ZeroInput, "valuation of zero");
  if (ell < 2) throw Error(ErrorKind::InvalidArgument, "valuation needs ell >= 2");
  const auto uell = static_cast<unsigned long>(ell);
  Integer p = uell;
  Integer rest;
  const std::int64_t vn = static_cast<std::int64_t>(
      mpz_remove(rest.get_mpz_t(), x.get_num_mpz_t(), p.get_mpz_t()));
  const std::int64_t vd = static_cast<std::int64_t>(
      mpz_remove(rest.get_mpz_t(), x.get_den_mpz_t(), p.get_mpz_t()));
  return vn - vd;
}

std::int64_t delta(std::int64_t ell, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "delta needs m >= 1");
  if (std::gcd(ell, std::int64_t{24}) != 1) {
    throw Error(ErrorKind::PreconditionViolation, "delta needs gcd(24, ell) = 1");
  }
  const std::int64_t modulus = checked_pow(ell, m);
  Integer inv;
  const Integer twenty_four = 24;
  const Integer mod = to_integer(modulus);
  mpz_invert(inv.get_mpz_t(), twenty_four.get_mpz_t(), mod.get_mpz_t());
  const std::int64_t d = to_int64(inv);
  return d == 0 ? modulus : d;
}

Rational hurwitz_class_number(std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "H(n) needs n >= 0");
  if (n == 0) return Rational(-1, 12);
  if (n % 4 == 1 || n % 4 == 2) return Rational(0);
  // Reduced forms (a, b, c): b^2 - 4ac = -n, |b| <= a <= c, b >= 0 when
  // |b| = a or a = c. Forms a(x^2+y^2) weigh 1/2, a(x^2+xy+y^2) weigh 1/3.
  Rational total(0);
  std::int64_t whole = 0;
  for (std::int64_t b = n % 2; 3 * b * b <= n; b += 2) {
    const std::int64_t four_ac = b * b + n;
    for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= four_ac / 4; ++a) {
      if (four_ac % (4 * a) != 0) continue;
      const std::int64_t c = four_ac / (4 * a);
      if (c < a) continue;
      if (b == 0 && a == c) {
        total += Rational(1, 2);
      } else if (b == a && a == c) {
        total += Rational(1, 3);
      } else if (b == 0 || b == a || a == c) {
        ++whole;
      } else {
        whole += 2;  // (a, b, c) and (a, -b, c)
      }
    }
  }
  return total + to_rational(whole);
}

std::vector<Rational> hurwitz_table(std::int64_t n_max) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n_max + 1));
  for (std::int64_t n = 0; n <= n_max; ++n) out.push_back(hurwitz_class_number(n));
  return out;
}

std::int64_t sturm_bound(std::int64_t weight_times_2, std::int64_t level) {
  if (weight_times_2 < 1 || level < 1) throw Error(ErrorKind::InvalidArgument, "sturm_bound needs positive inputs");
  if (weight_times_2 % 2 != 0) {
    throw Error(ErrorKind::HalfIntegralWeightUnsupported, "weight " + std::to_string(weight_times_2) + "/2");
  }
  // index = level * prod_{p | level} (1 + 1/p)
  std::int64_t index = level;
  std::int64_t rest = level;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    index = index / p * (p + 1);
  }
  if (rest > 1) index = index / rest * (rest + 1);
  return (weight_times_2 / 2) * index / 12;
}

std::int64_t sigma1(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sigma1 needs n >= 1");
  std::int64_t s = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    s += d;
    if (d * d != n) s += n / d;
  }
  return s;
}

std::vector<std::int64_t> sigma1_table(std::int64_t n_max) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0) + 1), 0);
  for (std::int64_t d = 1; d <= n_max; ++d) {
    for (std::int64_t k = d; k <= n_max; k += d) out[static_cast<std::size_t>(k)] += d;
  }
  return out;
}

}  // namespace smallparts

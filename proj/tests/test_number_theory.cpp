#include <doctest.h>

#include "oracles.hpp"
#include "smallparts/number_theory.hpp"

using namespace smallparts;

namespace {

// Legendre symbol by listing squares; Kronecker at 2 from the (a mod 8) rule.
int kronecker_brute(std::int64_t a, std::int64_t p) {
  if (p == 2) {
    if (a % 2 == 0) return 0;
    const std::int64_t r = ((a % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const std::int64_t r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (std::int64_t x = 1; x < p; ++x)
    if ((x * x) % p == r) return 1;
  return -1;
}

}  // namespace

TEST_CASE("kronecker examples") {
  CHECK(kronecker(3, 13) == 1);
  for (std::int64_t a = -20; a <= 20; ++a) CHECK(kronecker(a, 1) == 1);
  CHECK(kronecker(-4, 7) == -1);
  CHECK(kronecker(12, 5) == -1);
  CHECK(kronecker(12, 11) == 1);
  CHECK(kronecker(0, 1) == 1);
  CHECK(kronecker(5, 0) == 0);
}

TEST_CASE("kronecker against brute force at primes, extended multiplicatively") {
  const std::int64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  for (std::int64_t a = -30; a <= 30; ++a) {
    for (auto p : primes) CHECK(kronecker(a, p) == kronecker_brute(a, p));
    CHECK(kronecker(a, 105) == kronecker_brute(a, 3) * kronecker_brute(a, 5) * kronecker_brute(a, 7));
    CHECK(kronecker(a, 8) == kronecker_brute(a, 2) * kronecker_brute(a, 2) * kronecker_brute(a, 2));
  }
}

TEST_CASE("primality and checked powers") {
  int count = 0;
  for (std::int64_t n = -5; n < 1000; ++n) count += is_prime(n);
  CHECK(count == 168);
  CHECK(checked_pow(5, 4) == 625);
  CHECK(checked_pow(7, 0) == 1);
  CHECK_THROWS_AS(checked_pow(10, 19), Error);
}

TEST_CASE("ell-adic valuation examples") {
  CHECK(ell_adic_valuation(Rational(35, 12), 5) == 1);
  CHECK(ell_adic_valuation(Rational(1, 12), 3) == -1);
  CHECK(ell_adic_valuation(Rational(98), 7) == 2);
  CHECK_THROWS_AS(ell_adic_valuation(Rational(0), 5), Error);
}

TEST_CASE("delta examples and defining property") {
  CHECK(delta(5, 1) == 4);
  CHECK(delta(7, 1) == 5);
  CHECK(delta(5, 3) == 99);
  CHECK(delta(13, 1) == 6);
  for (std::int64_t ell : {5, 7, 11, 13, 17}) {
    for (int m = 1; m <= 3; ++m) {
      const std::int64_t mod = checked_pow(ell, m);
      const std::int64_t d = delta(ell, m);
      CHECK(d > 0);
      CHECK(d < mod);
      CHECK((24 * d) % mod == 1);
    }
  }
}

TEST_CASE("Hurwitz class numbers: examples") {
  CHECK(hurwitz_class_number(0) == Rational(-1, 12));
  CHECK(hurwitz_class_number(3) == Rational(1, 3));
  CHECK(hurwitz_class_number(4) == Rational(1, 2));
  CHECK(hurwitz_class_number(7) == 1);
  CHECK(hurwitz_class_number(8) == 1);
  CHECK(hurwitz_class_number(11) == 1);
  CHECK(hurwitz_class_number(23) == 3);
  CHECK(hurwitz_class_number(1) == 0);
  CHECK(hurwitz_class_number(6) == 0);
}

TEST_CASE("Hurwitz table satisfies the Kronecker-Hurwitz relation") {
  const auto table = hurwitz_table(4 * 300);
  for (std::size_t n = 0; n < 400; ++n) CHECK(table[n] == oracle::hurwitz_reduced_count(static_cast<long>(n)));
  auto h = [&](long n) { return table[static_cast<std::size_t>(n)]; };
  for (long big_n = 1; big_n <= 300; ++big_n) CHECK(oracle::kronecker_hurwitz_defect(h, big_n) == 0);
}

TEST_CASE("Sturm bound examples") {
  CHECK(sturm_bound(28, 1) == 1);
  CHECK(sturm_bound(12, 2) == 1);
  // Weight 22 on Gamma0(2) gives floor(22 * 3 / 12) = 5; weight 42 gives 10.
  CHECK(sturm_bound(44, 2) == 5);
  CHECK(sturm_bound(84, 2) == 10);
  CHECK(sturm_bound(52, 1) == 2);
  CHECK_THROWS_AS(sturm_bound(3, 1), Error);
}

TEST_CASE("sigma1 examples and table") {
  CHECK(sigma1(1) == 1);
  CHECK(sigma1(6) == 12);
  CHECK(sigma1(12) == 28);
  const auto table = sigma1_table(500);
  CHECK(table[0] == 0);
  for (long n = 1; n <= 500; ++n) CHECK(table[static_cast<std::size_t>(n)] == oracle::sigma1(n));
}

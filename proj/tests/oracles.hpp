#pragma once

// Reference implementations used only by the tests. Each one computes its
// quantity from first principles by a route that shares no code with the
// library: partitions are generated recursively, class numbers are checked
// against the Kronecker-Hurwitz relation, and products are expanded one
// binomial factor at a time.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "smallparts/qseries.hpp"

namespace oracle {

using smallparts::QSeries;
using smallparts::Rational;

/// Calls visit(parts) for every partition of n, parts in non-increasing order.
inline void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      visit(parts);
      return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
      parts.push_back(k);
      rec(remaining - k, k);
      parts.pop_back();
    }
  };
  rec(n, n);
}

inline long partitions(int n) {
  long c = 0;
  for_each_partition(n, [&](const std::vector<int>&) { ++c; });
  return c;
}

inline long spt(int n) {
  long c = 0;
  for_each_partition(n, [&](const std::vector<int>& p) {
    if (p.empty()) return;
    const int s = p.back();
    for (int x : p) c += (x == s);
  });
  return c;
}

/// Overpartitions: the first occurrence of each distinct part may be overlined,
/// so a partition with d distinct parts contributes 2^d.
inline long overpartitions(int n) {
  long c = 0;
  for_each_partition(n, [&](const std::vector<int>& p) {
    int distinct = 0;
    for (std::size_t i = 0; i < p.size(); ++i) distinct += (i == 0 || p[i] != p[i - 1]);
    c += 1L << distinct;
  });
  return c;
}

/// Smallest parts over all overpartitions with odd smallest part; each of the
/// 2^d overlinings of a partition with d distinct parts contributes its count.
inline long sptbar1(int n) {
  long c = 0;
  for_each_partition(n, [&](const std::vector<int>& p) {
    if (p.empty() || p.back() % 2 == 0) return;
    const int s = p.back();
    int distinct = 0;
    int count_s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      distinct += (i == 0 || p[i] != p[i - 1]);
      count_s += (p[i] == s);
    }
    c += static_cast<long>(count_s) << distinct;
  });
  return c;
}

inline bool odd_parts_distinct(const std::vector<int>& p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] == p[i - 1] && p[i] % 2 == 1) return false;
  return true;
}

inline long podd(int n) {
  long c = 0;
  for_each_partition(n, [&](const std::vector<int>& p) { c += odd_parts_distinct(p); });
  return c;
}

/// Partitions with distinct odd parts and even smallest part, counting the
/// smallest parts.
inline long m2spt(int n) {
  long c = 0;
  for_each_partition(n, [&](const std::vector<int>& p) {
    if (p.empty() || p.back() % 2 == 1 || !odd_parts_distinct(p)) return;
    for (int x : p) c += (x == p.back());
  });
  return c;
}

inline long sigma1(long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

/// Hurwitz class number by counting reduced forms (a, b, c), b^2 - 4ac = -n,
/// |b| <= a <= c with b >= 0 on the boundary, weighting the forms of
/// x^2+y^2 by 1/2 and x^2+xy+y^2 by 1/3. The relation check below is the
/// independent confirmation of this count.
inline Rational hurwitz_reduced_count(long n) {
  if (n == 0) return Rational(-1, 12);
  if (n % 4 == 1 || n % 4 == 2) return Rational(0);
  Rational total(0);
  for (long a = 1; 3 * a * a <= n; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      const long num = b * b + n;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      Rational w(1);
      if (a == b && b == c) w = Rational(1, 3);
      else if (b == 0 && a == c) w = Rational(1, 2);
      total += w;
    }
  }
  return total;
}

/// Left side minus right side of the Kronecker-Hurwitz relation at N, given a
/// table of class numbers.
inline Rational kronecker_hurwitz_defect(const std::function<Rational(long)>& h, long big_n) {
  Rational lhs(0);
  for (long s = -2 * big_n; s <= 2 * big_n; ++s) {
    const long arg = 4 * big_n - s * s;
    if (arg >= 0) lhs += h(arg);
  }
  long rhs = 2 * sigma1(big_n);
  for (long d = 1; d <= big_n; ++d)
    if (big_n % d == 0) rhs -= std::min(d, big_n / d);
  return lhs - Rational(rhs);
}

/// Dense coefficients c[0..n) of prod_k (1 - q^k)^{e_k} expanded by multiplying
/// one binomial factor at a time.
inline std::vector<mpz_class> product_expansion(int n, const std::function<int(int)>& exponent_of_k) {
  std::vector<mpz_class> c(static_cast<std::size_t>(n), 0);
  c[0] = 1;
  for (int k = 1; k < n; ++k) {
    int e = exponent_of_k(k);
    for (; e > 0; --e)
      for (int i = n - 1; i >= k; --i) c[i] -= c[i - k];
    for (; e < 0; ++e)
      for (int i = k; i < n; ++i) c[i] += c[i - k];
  }
  return c;
}

/// Random integral-exponent series with small integer coefficients.
inline QSeries random_series(std::mt19937_64& rng, std::int64_t lo_q, std::int64_t hi_q, double density = 0.6,
                             int coeff_bound = 9, bool rational = false) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> value(-coeff_bound, coeff_bound);
  std::uniform_int_distribution<int> den(1, 6);
  std::vector<QSeries::Term> terms;
  for (std::int64_t e = lo_q; e < hi_q; ++e) {
    if (coin(rng) > density) continue;
    Rational c(value(rng), rational ? den(rng) : 1);
    c.canonicalize();
    terms.push_back({e * QSeries::kUnit, c});
  }
  return QSeries(std::move(terms), hi_q * QSeries::kUnit);
}

}  // namespace oracle

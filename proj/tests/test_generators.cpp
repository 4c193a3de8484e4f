#include <doctest.h>

#include "oracles.hpp"
#include "smallparts/generators.hpp"

using namespace smallparts;

namespace {

long brute(Statistic s, int n) {
  switch (s) {
    case Statistic::P: return oracle::partitions(n);
    case Statistic::PBAR: return oracle::overpartitions(n);
    case Statistic::SPT: return oracle::spt(n);
    case Statistic::SPTBAR1: return oracle::sptbar1(n);
    case Statistic::M2SPT: return oracle::m2spt(n);
    case Statistic::PODD: return oracle::podd(n);
  }
  return -1;
}

}  // namespace

TEST_CASE("quoted values") {
  CHECK(oracle::partitions(5) == 7);
  CHECK(oracle::spt(5) == 14);
  CHECK(oracle::overpartitions(4) == 14);
  CHECK(oracle::sptbar1(4) == 20);
  CHECK(oracle::m2spt(7) == 3);
  CHECK(oracle::podd(7) == 7);

  CHECK(partition_series(10).coeff_q(5) == 7);
  CHECK(partition_series(10).coeff_q(0) == 1);
  CHECK(spt_series(10).coeff_q(5) == 14);
  CHECK(spt_series(10).coeff_q(1) == 1);
  CHECK(overpartition_series(10).coeff_q(4) == 14);
  CHECK(sptbar1_series(10).coeff_q(4) == 20);
  CHECK(m2spt_series(12).coeff_q(7) == 3);
  CHECK(podd_series(12).coeff_q(7) == 7);
}

TEST_CASE("every statistic agrees with the test-side enumeration") {
  for (Statistic s : kAllStatistics) {
    CAPTURE(to_string(s));
    const QSeries series = statistic_series(s, 31);
    for (int n = 1; n <= 30; ++n) {
      CAPTURE(n);
      CHECK(series.coeff_q(n) == brute(s, n));
    }
  }
}

TEST_CASE("library enumeration oracle agrees with the test-side enumeration") {
  for (Statistic s : kAllStatistics) {
    for (int n = 1; n <= 18; ++n) CHECK(enumerate_oracle(s, n) == brute(s, n));
  }
  CHECK(enumerate_oracle(Statistic::SPT, 4) == oracle::spt(4));
  CHECK(enumerate_oracle(Statistic::SPTBAR1, 6) == oracle::sptbar1(6));
  CHECK(enumerate_oracle(Statistic::M2SPT, 10) == oracle::m2spt(10));
  CHECK(partition_series(51).coeff_q(50) == oracle::partitions(50));
}

TEST_CASE("oracle ceiling") {
  try {
    (void)enumerate_oracle(Statistic::P, 61, 60);
    FAIL("expected OracleCeilingExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OracleCeilingExceeded);
  }
}

TEST_CASE("euler product matches factor-by-factor expansion") {
  const auto ref = oracle::product_expansion(300, [](int) { return 1; });
  const QSeries e = euler_product(300);
  for (int k = 0; k < 300; ++k) CHECK(e.coeff_q(k) == ref[static_cast<std::size_t>(k)]);
  const QSeries e3 = euler_product(90, 3);
  for (int k = 0; k < 90; ++k) CHECK(e3.coeff_q(k) == (k % 3 == 0 ? ref[static_cast<std::size_t>(k / 3)] : 0));
}

TEST_CASE("statistics names round trip") {
  for (Statistic s : kAllStatistics) CHECK(parse_statistic(to_string(s)) == s);
  CHECK_FALSE(parse_statistic("nope").has_value());
}

TEST_CASE("build_statistic runs its oracle check") {
  const auto built = build_statistic(Statistic::SPT, 200, 30);
  CHECK(built.series.coeff_q(5) == 14);
  CHECK(built.oracle_range == 30);
}

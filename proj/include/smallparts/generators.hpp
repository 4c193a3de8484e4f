#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smallparts/qseries.hpp"

namespace smallparts {

/// The six partition statistics. PODD counts partitions without repeated odd
/// parts.
enum class Statistic { P, PBAR, SPT, SPTBAR1, M2SPT, PODD };

std::string_view to_string(Statistic s);
std::optional<Statistic> parse_statistic(std::string_view name);
inline constexpr Statistic kAllStatistics[] = {Statistic::P,       Statistic::PBAR,  Statistic::SPT,
                                               Statistic::SPTBAR1, Statistic::M2SPT, Statistic::PODD};

// Every builder below takes a q-precision N: the returned series is exact for
// q^0 .. q^{N-1}.

/// prod_{n>=1} (1 - q^{step*n}) by the pentagonal number theorem.
QSeries euler_product(std::int64_t n, std::int64_t step = 1);

QSeries partition_series(std::int64_t n);
QSeries spt_series(std::int64_t n);
QSeries overpartition_series(std::int64_t n);
QSeries sptbar1_series(std::int64_t n);
QSeries m2spt_series(std::int64_t n);
QSeries podd_series(std::int64_t n);
QSeries statistic_series(Statistic s, std::int64_t n);

/// One factor (1 - sign * q^{multiplier * n}) of a bilateral summand.
struct DenominatorFactor {
  std::int64_t multiplier;
  int sign;
};

/// sum over n != 0 of  eps(n) * coefficient * q^{lead(n)} * sum_j q^{j*n}  /  prod (1 - s q^{c n}),
/// with lead(n) = (a n^2 + b n) / divisor and eps(n) = (-1)^n when `alternating`.
/// Negative n are folded onto positive ones by rewriting each
/// (1 - s q^{-c k}) as -s q^{-c k} (1 - s q^{c k}).
struct BilateralSum {
  std::int64_t quadratic;
  std::int64_t linear;
  std::int64_t divisor;
  bool alternating;
  std::int64_t coefficient;
  std::vector<std::int64_t> numerator_offsets;
  std::vector<DenominatorFactor> denominator;
};

/// Expands the n != 0 part of a bilateral sum to q-precision N (integer
/// coefficients, q^0 .. q^{N-1}).
std::vector<std::int64_t> expand_bilateral(const BilateralSum& sum, std::int64_t n);

/// Exhaustive-generation count of a statistic at n. Throws
/// OracleCeilingExceeded when n > ceiling.
Integer enumerate_oracle(Statistic s, std::int64_t n, std::int64_t ceiling = 60);

struct PartitionStatistic {
  Statistic name;
  QSeries series;
  std::int64_t oracle_range;
};

/// Builds a statistic and checks it against the enumeration oracle on
/// [1, oracle_range]; throws IdentityFailure on the first disagreement.
PartitionStatistic build_statistic(Statistic s, std::int64_t n, std::int64_t oracle_range);

}  // namespace smallparts

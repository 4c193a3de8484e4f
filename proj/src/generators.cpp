#include "smallparts/generators.hpp"

#include <algorithm>
#include <cstdlib>

#include "smallparts/number_theory.hpp"

namespace smallparts {

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::P: return "p";
    case Statistic::PBAR: return "pbar";
    case Statistic::SPT: return "spt";
    case Statistic::SPTBAR1: return "sptbar1";
    case Statistic::M2SPT: return "m2spt";
    case Statistic::PODD: return "podd";
  }
  return "?";
}

std::optional<Statistic> parse_statistic(std::string_view name) {
  for (Statistic s : kAllStatistics) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

void require_precision(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "series precision must be at least 1");
}

QSeries from_dense(const std::vector<std::int64_t>& coeffs, std::int64_t n) {
  return QSeries::from_q_coefficients(std::span<const std::int64_t>(coeffs), 0, n);
}

}  // namespace

QSeries euler_product(std::int64_t n, std::int64_t step) {
  require_precision(n);
  if (step < 1) throw Error(ErrorKind::InvalidArgument, "euler_product step must be positive");
  // prod (1 - x^k) = sum_j (-1)^j x^{j(3j-1)/2} over all integers j.
  std::vector<QSeries::Term> terms;
  terms.push_back(QSeries::Term{0, Rational(1)});
  for (std::int64_t j = 1;; ++j) {
    const std::int64_t e1 = step * (j * (3 * j - 1) / 2);
    const std::int64_t e2 = step * (j * (3 * j + 1) / 2);
    if (e1 >= n) break;
    const Rational sign(j % 2 == 0 ? 1 : -1);
    terms.push_back(QSeries::Term{e1 * QSeries::kUnit, sign});
    if (e2 < n) terms.push_back(QSeries::Term{e2 * QSeries::kUnit, sign});
  }
  return make_sorted(std::move(terms), n * QSeries::kUnit);
}

QSeries partition_series(std::int64_t n) {
  require_precision(n);
  return invert(euler_product(n));
}

QSeries overpartition_series(std::int64_t n) {
  require_precision(n);
  const QSeries inv = invert(euler_product(n));
  return mul(euler_product(n, 2), mul(inv, inv));
}

QSeries podd_series(std::int64_t n) {
  require_precision(n);
  return mul(euler_product(n, 2), mul(invert(euler_product(n)), invert(euler_product(n, 4))));
}

std::vector<std::int64_t> expand_bilateral(const BilateralSum& sum, std::int64_t n) {
  require_precision(n);
  if (sum.quadratic <= 0 || sum.divisor <= 0) {
    throw Error(ErrorKind::InvalidArgument, "bilateral sums need a positive quadratic leading exponent");
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(n), 0);
  std::int64_t spread = std::abs(sum.linear);
  for (const auto& f : sum.denominator) spread += f.multiplier;
  for (std::int64_t j : sum.numerator_offsets) spread += std::abs(j);
  std::vector<std::int64_t> kernel;
  for (std::int64_t k = 1; sum.quadratic * k * k - spread * sum.divisor * k < sum.divisor * n; ++k) {
    for (const std::int64_t nn : {k, -k}) {
      std::int64_t sign = (sum.alternating && (k % 2 == 1)) ? -1 : 1;
      std::int64_t base = (sum.quadratic * nn * nn + sum.linear * nn) / sum.divisor;
      if (nn < 0) {
        for (const auto& f : sum.denominator) {
          base += f.multiplier * k;
          sign *= -f.sign;
        }
      }
      std::int64_t lead = base;
      for (std::int64_t j : sum.numerator_offsets) lead = std::min(lead, base + j * nn);
      if (lead >= n) continue;
      if (lead < 0) throw Error(ErrorKind::InvalidArgument, "bilateral sum folds to a negative exponent");
      kernel.assign(static_cast<std::size_t>(n - lead), 0);
      for (std::int64_t j : sum.numerator_offsets) {
        const std::int64_t e = base + j * nn - lead;
        if (e < static_cast<std::int64_t>(kernel.size())) kernel[static_cast<std::size_t>(e)] += 1;
      }
      for (const auto& f : sum.denominator) {
        const auto stride = static_cast<std::size_t>(f.multiplier * k);
        for (std::size_t i = stride; i < kernel.size(); ++i) kernel[i] += f.sign * kernel[i - stride];
      }
      const std::int64_t factor = sign * sum.coefficient;
      for (std::size_t i = 0; i < kernel.size(); ++i) {
        out[static_cast<std::size_t>(lead) + i] += factor * kernel[i];
      }
    }
  }
  return out;
}

QSeries spt_series(std::int64_t n) {
  require_precision(n);
  // sum n q^n/(1-q^n) + sum_{n != 0} (-1)^n q^{n(3n+1)/2} / (1-q^n)^2
  auto lambert = expand_bilateral(BilateralSum{3, 1, 2, true, 1, {0}, {{1, 1}, {1, 1}}}, n);
  const auto sigma = sigma1_table(n - 1);
  for (std::int64_t m = 1; m < n; ++m) lambert[static_cast<std::size_t>(m)] += sigma[static_cast<std::size_t>(m)];
  return mul(partition_series(n), from_dense(lambert, n));
}

QSeries sptbar1_series(std::int64_t n) {
  require_precision(n);
  // sum 2n q^n/(1-q^{2n}) + sum_{n != 0} 4(-1)^n q^{n^2+n}(1+q^{2n}+q^{3n}) / ((1-q^{2n})(1-q^{4n}))
  auto lambert = expand_bilateral(BilateralSum{1, 1, 1, true, 4, {0, 2, 3}, {{2, 1}, {4, 1}}}, n);
  for (std::int64_t d = 1; d < n; ++d) {
    for (std::int64_t e = d; e < n; e += 2 * d) lambert[static_cast<std::size_t>(e)] += 2 * d;
  }
  return mul(overpartition_series(n), from_dense(lambert, n));
}

QSeries m2spt_series(std::int64_t n) {
  require_precision(n);
  // sum n q^{2n}/(1-q^{2n}) + sum_{n != 0} (-1)^n q^{2n^2+n} / (1-q^{2n})^2
  auto lambert = expand_bilateral(BilateralSum{2, 1, 1, true, 1, {0}, {{2, 1}, {2, 1}}}, n);
  const auto sigma = sigma1_table((n - 1) / 2);
  for (std::int64_t m = 1; 2 * m < n; ++m) {
    lambert[static_cast<std::size_t>(2 * m)] += sigma[static_cast<std::size_t>(m)];
  }
  return mul(podd_series(n), from_dense(lambert, n));
}

QSeries statistic_series(Statistic s, std::int64_t n) {
  switch (s) {
    case Statistic::P: return partition_series(n);
    case Statistic::PBAR: return overpartition_series(n);
    case Statistic::SPT: return spt_series(n);
    case Statistic::SPTBAR1: return sptbar1_series(n);
    case Statistic::M2SPT: return m2spt_series(n);
    case Statistic::PODD: return podd_series(n);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown statistic");
}

PartitionStatistic build_statistic(Statistic s, std::int64_t n, std::int64_t oracle_range) {
  QSeries series = statistic_series(s, n);
  const std::int64_t top = std::min(oracle_range, n - 1);
  for (std::int64_t k = 1; k <= top; ++k) {
    const Integer expected = enumerate_oracle(s, k, std::max<std::int64_t>(oracle_range, 60));
    if (series.coeff_q(k) != Rational(expected)) {
      throw Error(ErrorKind::IdentityFailure,
                  std::string(to_string(s)) + "(" + std::to_string(k) + ") = " + series.coeff_q(k).get_str() +
                      " disagrees with enumeration " + expected.get_str(),
                  k);
    }
  }
  return PartitionStatistic{s, std::move(series), top};
}

}  // namespace smallparts

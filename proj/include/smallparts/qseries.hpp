#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "smallparts/errors.hpp"
#include "smallparts/rational.hpp"

namespace smallparts {

/// Truncated Laurent series in q with exact rational coefficients.
///
/// Exponents live on the lattice (1/24)Z and are stored as integer indices
/// counting units of 1/24, so q^n has index 24n and q^{1/24} has index 1.
/// All terms with index below `precision()` are known exactly; nothing is
/// known at or above it. Zero coefficients are never stored, so two series
/// compare equal exactly when they agree term-for-term and in precision.
///
/// A precision of `kExact` marks a finite exact object (a polynomial).
class QSeries {
 public:
  static constexpr std::int64_t kUnit = 24;
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

  struct Term {
    std::int64_t index;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  /// The exact zero series.
  QSeries() = default;

  /// Sorts, merges repeated indices, drops zeros and anything at or beyond
  /// `precision`.
  QSeries(std::vector<Term> terms, std::int64_t precision);

  static QSeries zero(std::int64_t precision = kExact);
  static QSeries one();
  static QSeries monomial(std::int64_t index, const Rational& coeff, std::int64_t precision = kExact);

  /// Integral-exponent series sum_k coeffs[k] q^{start + k*step}, exact for
  /// q-exponents below `precision_q`.
  static QSeries from_q_coefficients(std::span<const Integer> coeffs, std::int64_t start,
                                     std::int64_t precision_q, std::int64_t step = 1);
  static QSeries from_q_coefficients(std::span<const std::int64_t> coeffs, std::int64_t start,
                                     std::int64_t precision_q, std::int64_t step = 1);

  std::int64_t precision() const { return precision_; }
  /// Precision in whole q-exponents: every q^n with n < q_precision() is exact.
  std::int64_t q_precision() const;
  /// Smallest stored index; equals precision() for a zero series.
  std::int64_t min_index() const { return terms_.empty() ? precision_ : terms_.front().index; }
  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const { return precision_ == kExact; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Coefficient at an index; throws InsufficientPrecision at or beyond precision.
  Rational coeff(std::int64_t index) const;
  /// Coefficient of q^exponent for an integral exponent.
  Rational coeff_q(std::int64_t exponent) const { return coeff(exponent * kUnit); }

  bool has_integral_exponents() const;
  bool all_integer_coefficients() const;

  QSeries truncate(std::int64_t precision) const;

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  struct Sorted {};
  QSeries(Sorted, std::vector<Term> terms, std::int64_t precision)
      : terms_(std::move(terms)), precision_(precision) {}
  friend QSeries make_sorted(std::vector<Term> terms, std::int64_t precision);

  std::vector<Term> terms_;
  std::int64_t precision_ = kExact;
};

/// Builds from terms already strictly increasing in index, nonzero and below
/// precision. Checked only in debug builds.
QSeries make_sorted(std::vector<QSeries::Term> terms, std::int64_t precision);

/// Saturating precision arithmetic: kExact absorbs every offset.
std::int64_t precision_add(std::int64_t precision, std::int64_t offset);

/// Floor and ceiling division for signed integers with positive divisor.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries negate(const QSeries& a);
QSeries scale(const QSeries& a, const Rational& c);
/// Multiplication by q^{index/24}.
QSeries shift(const QSeries& a, std::int64_t index);

/// Cauchy product to precision min(a.prec + b.min, b.prec + a.min). Large
/// dense products go through Kronecker substitution.
QSeries mul(const QSeries& a, const QSeries& b);
/// Schoolbook Cauchy product; same contract as mul.
QSeries mul_naive(const QSeries& a, const QSeries& b);

/// Multiplicative inverse. For leading term c q^v the result has leading
/// index -v and precision a.prec - 2v, clamped to `max_precision`. Inverting
/// an exact non-monomial requires a finite `max_precision`.
QSeries invert(const QSeries& a, std::int64_t max_precision = QSeries::kExact);

/// Repeated squaring; negative exponents invert first.
QSeries pow(const QSeries& a, std::int64_t k, std::int64_t max_precision = QSeries::kExact);

/// q d/dq: c q^n -> n c q^n. Requires integral exponents.
QSeries q_derivative(const QSeries& a);

/// tau -> t*tau: index n -> t*n.
QSeries dilate(const QSeries& a, std::int64_t t);

/// Keeps terms whose q-exponent is congruent to r mod modulus. Requires
/// integral exponents.
QSeries restrict_progression(const QSeries& a, std::int64_t r, std::int64_t modulus);

/// tau -> tau/t on a series whose q-exponents are all divisible by t.
QSeries rescale_exponents(const QSeries& a, std::int64_t t);

/// Replaces each coefficient by its residue in [0, ell^m); denominators must
/// be prime to ell.
QSeries reduce_mod(const QSeries& a, std::int64_t ell, int m);

/// Equality of the terms below the shared precision.
bool agree(const QSeries& a, const QSeries& b);
/// First index below the shared precision where a and b differ, or the shared
/// precision if none.
std::int64_t first_difference(const QSeries& a, const QSeries& b);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator-(const QSeries& a) { return negate(a); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
inline QSeries operator*(const Rational& c, const QSeries& a) { return scale(a, c); }

/// JSON {"unit": 24, "precision": P, "terms": [[index, num, den], ...]}.
/// Big integers are written as bare JSON number literals; an exact series
/// has "precision": null.
std::string to_json(const QSeries& a);
QSeries series_from_json(const std::string& text);

/// Human-readable rendering of the first few terms, e.g. "q^-1 - 35*q^23 + O(q^47)".
std::string to_display_string(const QSeries& a, std::size_t max_terms = 8);

}  // namespace smallparts

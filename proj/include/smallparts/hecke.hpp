#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "smallparts/number_theory.hpp"
#include "smallparts/qseries.hpp"

namespace smallparts {

/// Parameters of the weight-3/2 operator T_chi(ell^{2m}).
struct HeckeSpec {
  std::int64_t ell = 3;
  int m = 1;
  Character chi{1};

  /// chi(ell), the only character value the operator formula uses.
  int chi_ell() const { return chi(ell); }
  /// Throws InvalidArgument unless ell is an odd prime with chi(ell) != 0 and m >= 0.
  void validate() const;
};

/// q-precision of F | T(ell^{2m}) given the q-precision of F.
std::int64_t hecke_output_q_precision(std::int64_t source_q_precision, std::int64_t ell, int m);

/// Coefficientwise a(ell^2 n) + chi(ell) (-n/ell) a(n) + ell a(n/ell^2), for
/// negative n as well. Requires integral exponents.
QSeries apply_T_ell_squared(const QSeries& f, std::int64_t ell, const Character& chi);

/// A source series together with its images under T(ell^{2m}) for growing m,
/// filled by T(ell^{2m}) = T(ell^{2m-2}) T(ell^2) - ell T(ell^{2m-4}).
class HeckeTriple {
 public:
  HeckeTriple(QSeries f0, std::int64_t ell, Character chi);

  const QSeries& source() const { return cache_.front(); }
  std::int64_t ell() const { return ell_; }
  const Character& chi() const { return chi_; }

  /// F0 | T(ell^{2m}).
  const QSeries& power(int m);
  /// F_{m,chi} = F0 | T(ell^{2m}) - chi(ell) F0 | T(ell^{2m-2}) for m >= 1.
  QSeries combination(int m);

 private:
  std::int64_t ell_;
  Character chi_;
  std::vector<QSeries> cache_;
};

/// F0 | T(ell^{2m}); throws InsufficientPrecision (carrying the required
/// source q-precision) if the result would not reach `out_q_precision`.
QSeries apply_T_power(HeckeTriple& triple, int m, std::optional<std::int64_t> out_q_precision = std::nullopt);

/// The same operator composed in the other order,
/// T(ell^2) T(ell^{2m-2}) - ell T(ell^{2m-4}).
QSeries apply_T_power_reversed(const QSeries& f0, const HeckeSpec& spec);

/// F_{m,chi}; for m >= 2 also confirms F_m = F_{m-1} | T(ell^2) - ell F_{m-2}
/// and throws RecursionMismatch otherwise.
QSeries build_F_m(HeckeTriple& triple, int m, std::optional<std::int64_t> out_q_precision = std::nullopt);

enum class Prop22Part { I, II, III };

using CoefficientAccessor = std::function<Rational(std::int64_t)>;

/// Closed-form coefficient of F_{m,chi} in terms of a0 = coefficients of F0:
///   I   a_m(ell^2 n) - ell a_{m-1}(n) = a0(ell^{2m+2} n) - chi(ell) a0(ell^{2m} n)
///   II  (ell does not divide n)  a_m(n) = a0(ell^{2m} n) + (1 - (-n/ell)) sum_k (-chi(ell))^k a0(ell^{2m-2k} n)
///   III (ell exactly divides n)  a_m(n) = a0(ell^{2m} n) - chi(ell) a0(ell^{2m-2} n)
/// Throws PreconditionViolation when n is outside the part's stratum.
Rational prop22_closed_form(const CoefficientAccessor& a0, const HeckeSpec& spec, std::int64_t n, Prop22Part part);

}  // namespace smallparts

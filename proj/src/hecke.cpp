#include "smallparts/hecke.hpp"

namespace smallparts {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::InvalidArgument, "exponent overflow");
  return out;
}

}  // namespace

void HeckeSpec::validate() const {
  if (ell < 3 || !is_prime(ell)) {
    throw Error(ErrorKind::InvalidArgument, "Hecke operators need an odd prime, got " + std::to_string(ell));
  }
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "Hecke power must be nonnegative");
  if (chi(ell) == 0) {
    throw Error(ErrorKind::InvalidArgument,
                "ell = " + std::to_string(ell) + " divides the character discriminant " + std::to_string(chi.d));
  }
}

std::int64_t hecke_output_q_precision(std::int64_t source_q_precision, std::int64_t ell, int m) {
  if (source_q_precision == QSeries::kExact) return QSeries::kExact;
  std::int64_t p = source_q_precision;
  for (int i = 0; i < m; ++i) p = ceil_div(p, ell * ell);
  return p;
}

QSeries apply_T_ell_squared(const QSeries& f, std::int64_t ell, const Character& chi) {
  const std::int64_t ell2 = ell * ell;
  const int chi_ell = chi(ell);
  const std::int64_t out_q = hecke_output_q_precision(f.q_precision(), ell, 1);
  const std::int64_t out_precision = out_q == QSeries::kExact ? QSeries::kExact : out_q * QSeries::kUnit;
  std::vector<QSeries::Term> out;
  out.reserve(f.size() * 2);
  for (const auto& t : f.terms()) {
    if (t.index % QSeries::kUnit != 0) {
      throw Error(ErrorKind::NonIntegralExponent,
                  "Hecke operators act on integral exponents; found index " + std::to_string(t.index), t.index);
    }
    const std::int64_t e = t.index / QSeries::kUnit;
    // a(ell^2 n) lands at n = e / ell^2.
    if (e % ell2 == 0) out.push_back(QSeries::Term{(e / ell2) * QSeries::kUnit, t.coeff});
    // chi(ell) (-n/ell) a(n) lands at n = e.
    if (const int k = chi_ell * kronecker(-e, ell); k != 0 && e < out_q) {
      out.push_back(QSeries::Term{t.index, k > 0 ? t.coeff : Rational(-t.coeff)});
    }
    // ell a(n / ell^2) lands at n = ell^2 e.
    const std::int64_t n = checked_mul(e, ell2);
    if (n < out_q) out.push_back(QSeries::Term{n * QSeries::kUnit, t.coeff * to_rational(ell)});
  }
  return QSeries(std::move(out), out_precision);
}

HeckeTriple::HeckeTriple(QSeries f0, std::int64_t ell, Character chi) : ell_(ell), chi_(chi) {
  HeckeSpec{ell, 0, chi}.validate();
  if (!f0.has_integral_exponents()) {
    throw Error(ErrorKind::NonIntegralExponent, "Hecke operators act on integral exponents");
  }
  cache_.push_back(std::move(f0));
}

const QSeries& HeckeTriple::power(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "Hecke power must be nonnegative");
  while (static_cast<int>(cache_.size()) <= m) {
    const std::size_t k = cache_.size();
    QSeries next = apply_T_ell_squared(cache_[k - 1], ell_, chi_);
    if (k >= 2) next = sub(next, scale(cache_[k - 2], to_rational(ell_)));
    cache_.push_back(std::move(next));
  }
  return cache_[static_cast<std::size_t>(m)];
}

QSeries HeckeTriple::combination(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "F_m is defined for m >= 1");
  const QSeries upper = power(m);
  return sub(upper, scale(power(m - 1), to_rational(chi_(ell_))));
}

QSeries apply_T_power(HeckeTriple& triple, int m, std::optional<std::int64_t> out_q_precision) {
  const QSeries& out = triple.power(m);
  if (out_q_precision && out.q_precision() < *out_q_precision) {
    const std::int64_t required = checked_mul(checked_pow(triple.ell(), 2 * m), *out_q_precision);
    throw Error(ErrorKind::InsufficientPrecision,
                "T(" + std::to_string(triple.ell()) + "^" + std::to_string(2 * m) + ") to q-precision " +
                    std::to_string(*out_q_precision) + " needs source q-precision " + std::to_string(required),
                required);
  }
  return out_q_precision ? out.truncate(*out_q_precision * QSeries::kUnit) : out;
}

QSeries apply_T_power_reversed(const QSeries& f0, const HeckeSpec& spec) {
  spec.validate();
  if (spec.m == 0) return f0;
  HeckeTriple base(f0, spec.ell, spec.chi);
  if (spec.m == 1) return base.power(1);
  HeckeTriple after_first(apply_T_ell_squared(f0, spec.ell, spec.chi), spec.ell, spec.chi);
  // T(ell^2) applied first, then T(ell^{2m-2}).
  return sub(after_first.power(spec.m - 1), scale(base.power(spec.m - 2), to_rational(spec.ell)));
}

QSeries build_F_m(HeckeTriple& triple, int m, std::optional<std::int64_t> out_q_precision) {
  apply_T_power(triple, m, out_q_precision);
  QSeries fm = triple.combination(m);
  if (m >= 2) {
    const QSeries prev = m - 1 >= 1 ? triple.combination(m - 1) : triple.source();
    const QSeries prev2 = m - 2 >= 1 ? triple.combination(m - 2) : triple.source();
    const QSeries recursed =
        sub(apply_T_ell_squared(prev, triple.ell(), triple.chi()), scale(prev2, to_rational(triple.ell())));
    if (!agree(fm, recursed)) {
      const std::int64_t at = first_difference(fm, recursed);
      throw Error(ErrorKind::RecursionMismatch,
                  "F_" + std::to_string(m) + " differs from F_{m-1}|T - ell F_{m-2} at index " + std::to_string(at),
                  at);
    }
  }
  return out_q_precision ? fm.truncate(*out_q_precision * QSeries::kUnit) : fm;
}

Rational prop22_closed_form(const CoefficientAccessor& a0, const HeckeSpec& spec, std::int64_t n, Prop22Part part) {
  spec.validate();
  if (spec.m < 1) throw Error(ErrorKind::PreconditionViolation, "closed forms need m >= 1");
  const std::int64_t ell = spec.ell;
  const Rational chi = to_rational(spec.chi_ell());
  auto scaled = [&](int twice_power) { return checked_mul(checked_pow(ell, twice_power), n); };
  switch (part) {
    case Prop22Part::I:
      return a0(scaled(2 * spec.m + 2)) - chi * a0(scaled(2 * spec.m));
    case Prop22Part::II: {
      if (n % ell == 0) {
        throw Error(ErrorKind::PreconditionViolation,
                    "part II needs ell not dividing n, but " + std::to_string(ell) + " | " + std::to_string(n), n);
      }
      Rational tail(0);
      Rational sign_chi(1);
      for (int k = 1; k <= spec.m; ++k) {
        sign_chi *= -chi;
        tail += sign_chi * a0(scaled(2 * spec.m - 2 * k));
      }
      return a0(scaled(2 * spec.m)) + to_rational(1 - kronecker(-n, ell)) * tail;
    }
    case Prop22Part::III:
      if (n % ell != 0 || (n / ell) % ell == 0) {
        throw Error(ErrorKind::PreconditionViolation,
                    "part III needs ell exactly dividing n, got n = " + std::to_string(n), n);
      }
      return a0(scaled(2 * spec.m)) - chi * a0(scaled(2 * spec.m - 2));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown closed-form part");
}

}  // namespace smallparts

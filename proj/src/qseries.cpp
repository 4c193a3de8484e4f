#include "smallparts/qseries.hpp"

#include <gmp.h>

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <sstream>

#include "dense.hpp"

namespace smallparts {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::NonIntegralExponent: return "NonIntegralExponent";
    case ErrorKind::IndivisibleExponent: return "IndivisibleExponent";
    case ErrorKind::DenominatorDivisibleByEll: return "DenominatorDivisibleByEll";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::HalfIntegralWeightUnsupported: return "HalfIntegralWeightUnsupported";
    case ErrorKind::OracleCeilingExceeded: return "OracleCeilingExceeded";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorKind::RecursionMismatch: return "RecursionMismatch";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::IdentityFailure: return "IdentityFailure";
    case ErrorKind::GuardExceeded: return "GuardExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t precision_add(std::int64_t precision, std::int64_t offset) {
  if (precision == QSeries::kExact) return QSeries::kExact;
  std::int64_t out = 0;
  if (__builtin_add_overflow(precision, offset, &out) || out == QSeries::kExact) {
    throw Error(ErrorKind::InvalidArgument, "precision overflow");
  }
  return out;
}

namespace {

std::int64_t precision_mul(std::int64_t precision, std::int64_t t) {
  if (precision == QSeries::kExact) return QSeries::kExact;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(precision, t, &out) || out == QSeries::kExact) {
    throw Error(ErrorKind::InvalidArgument, "precision overflow");
  }
  return out;
}

using Terms = std::vector<QSeries::Term>;

// gcd of the gaps between consecutive stored indices; 0 for at most one term.
std::int64_t lattice_step(std::span<const QSeries::Term> terms) {
  std::int64_t g = 0;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    g = std::gcd(g, terms[i].index - terms[0].index);
    if (g == 1) break;
  }
  return g;
}

std::span<const QSeries::Term> below(const Terms& terms, std::int64_t bound) {
  if (bound == QSeries::kExact) return terms;
  auto it = std::lower_bound(terms.begin(), terms.end(), bound,
                             [](const QSeries::Term& t, std::int64_t b) { return t.index < b; });
  return {terms.data(), static_cast<std::size_t>(it - terms.begin())};
}

Integer common_denominator(std::span<const QSeries::Term> terms) {
  Integer d = 1;
  for (const auto& t : terms) {
    if (t.coeff.get_den() != 1) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  return d;
}

// Integer coefficient vector on start + step*k after multiplying by `den`.
std::vector<Integer> to_dense(std::span<const QSeries::Term> terms, std::int64_t step, const Integer& den) {
  const std::int64_t start = terms.front().index;
  const std::size_t len = static_cast<std::size_t>((terms.back().index - start) / step) + 1;
  std::vector<Integer> out(len);
  for (const auto& t : terms) {
    Integer& slot = out[static_cast<std::size_t>((t.index - start) / step)];
    if (den == 1) {
      slot = t.coeff.get_num();
    } else {
      mpz_divexact(slot.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
      slot *= t.coeff.get_num();
    }
  }
  return out;
}

Rational divide(const Integer& num, const Integer& den) {
  if (den == 1) return Rational(num);
  return make_rational(num, den);
}

std::int64_t product_precision(const QSeries& a, const QSeries& b) {
  return std::min(precision_add(a.precision(), b.min_index()), precision_add(b.precision(), a.min_index()));
}

}  // namespace

QSeries::QSeries(std::vector<Term> terms, std::int64_t precision) : precision_(precision) {
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
  terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (t.index >= precision) break;
    if (!terms_.empty() && terms_.back().index == t.index) {
      terms_.back().coeff += t.coeff;
    } else {
      if (!terms_.empty() && sgn(terms_.back().coeff) == 0) terms_.pop_back();
      terms_.push_back(std::move(t));
    }
  }
  if (!terms_.empty() && sgn(terms_.back().coeff) == 0) terms_.pop_back();
}

QSeries make_sorted(std::vector<QSeries::Term> terms, std::int64_t precision) {
#ifndef NDEBUG
  for (std::size_t i = 0; i < terms.size(); ++i) {
    assert(sgn(terms[i].coeff) != 0);
    assert(terms[i].index < precision);
    assert(i == 0 || terms[i - 1].index < terms[i].index);
  }
#endif
  return QSeries(QSeries::Sorted{}, std::move(terms), precision);
}

QSeries QSeries::zero(std::int64_t precision) { return make_sorted({}, precision); }

QSeries QSeries::one() { return monomial(0, Rational(1)); }

QSeries QSeries::monomial(std::int64_t index, const Rational& coeff, std::int64_t precision) {
  if (sgn(coeff) == 0 || index >= precision) return zero(precision);
  return make_sorted({Term{index, coeff}}, precision);
}

QSeries QSeries::from_q_coefficients(std::span<const Integer> coeffs, std::int64_t start,
                                     std::int64_t precision_q, std::int64_t step) {
  const std::int64_t precision = precision_mul(precision_q, kUnit);
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (sgn(coeffs[k]) == 0) continue;
    const std::int64_t index = (start + static_cast<std::int64_t>(k) * step) * kUnit;
    if (index >= precision) break;
    terms.push_back(Term{index, Rational(coeffs[k])});
  }
  return make_sorted(std::move(terms), precision);
}

QSeries QSeries::from_q_coefficients(std::span<const std::int64_t> coeffs, std::int64_t start,
                                     std::int64_t precision_q, std::int64_t step) {
  const std::int64_t precision = precision_mul(precision_q, kUnit);
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    const std::int64_t index = (start + static_cast<std::int64_t>(k) * step) * kUnit;
    if (index >= precision) break;
    terms.push_back(Term{index, to_rational(coeffs[k])});
  }
  return make_sorted(std::move(terms), precision);
}

std::int64_t QSeries::q_precision() const { return is_exact() ? kExact : ceil_div(precision_, kUnit); }

Rational QSeries::coeff(std::int64_t index) const {
  if (index >= precision_) {
    throw Error(ErrorKind::InsufficientPrecision,
                "coefficient at index " + std::to_string(index) + " requested from a series known below " +
                    std::to_string(precision_),
                index);
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, std::int64_t i) { return t.index < i; });
  if (it == terms_.end() || it->index != index) return Rational(0);
  return it->coeff;
}

bool QSeries::has_integral_exponents() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.index % kUnit == 0; });
}

bool QSeries::all_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return is_integer(t.coeff); });
}

QSeries QSeries::truncate(std::int64_t precision) const {
  if (precision >= precision_) return *this;
  auto kept = below(terms_, precision);
  return make_sorted(Terms(kept.begin(), kept.end()), precision);
}

QSeries add(const QSeries& a, const QSeries& b) {
  const std::int64_t precision = std::min(a.precision(), b.precision());
  const auto& x = a.terms();
  const auto& y = b.terms();
  Terms out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (true) {
    const bool more_x = i < x.size() && x[i].index < precision;
    const bool more_y = j < y.size() && y[j].index < precision;
    if (!more_x && !more_y) break;
    if (more_x && (!more_y || x[i].index < y[j].index)) {
      out.push_back(x[i++]);
    } else if (more_y && (!more_x || y[j].index < x[i].index)) {
      out.push_back(y[j++]);
    } else {
      Rational s = x[i].coeff + y[j].coeff;
      if (sgn(s) != 0) out.push_back(QSeries::Term{x[i].index, std::move(s)});
      ++i;
      ++j;
    }
  }
  return make_sorted(std::move(out), precision);
}

QSeries negate(const QSeries& a) {
  Terms out = a.terms();
  for (auto& t : out) t.coeff = -t.coeff;
  return make_sorted(std::move(out), a.precision());
}

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, negate(b)); }

QSeries scale(const QSeries& a, const Rational& c) {
  if (sgn(c) == 0) return QSeries::zero(a.precision());
  Terms out = a.terms();
  for (auto& t : out) t.coeff *= c;
  return make_sorted(std::move(out), a.precision());
}

QSeries shift(const QSeries& a, std::int64_t index) {
  Terms out = a.terms();
  for (auto& t : out) t.index += index;
  return make_sorted(std::move(out), precision_add(a.precision(), index));
}

QSeries mul(const QSeries& a, const QSeries& b) {
  const std::int64_t precision = product_precision(a, b);
  if (a.is_zero() || b.is_zero()) return QSeries::zero(precision);
  const auto x = below(a.terms(), precision_add(precision, -b.min_index()));
  const auto y = below(b.terms(), precision_add(precision, -a.min_index()));
  if (x.empty() || y.empty()) return QSeries::zero(precision);
  const std::int64_t start = x.front().index + y.front().index;
  std::int64_t step = std::gcd(lattice_step(x), lattice_step(y));
  if (step == 0) {
    return QSeries::monomial(start, x.front().coeff * y.front().coeff, precision);
  }
  const Integer den_x = common_denominator(x);
  const Integer den_y = common_denominator(y);
  const auto dx = to_dense(x, step, den_x);
  const auto dy = to_dense(y, step, den_y);
  std::size_t out_len = dx.size() + dy.size() - 1;
  if (precision != QSeries::kExact) {
    out_len = std::min<std::size_t>(out_len, static_cast<std::size_t>(ceil_div(precision - start, step)));
  }
  const auto dz = detail::multiply_dense(dx, dy, out_len);
  const Integer den = den_x * den_y;
  Terms out;
  for (std::size_t k = 0; k < dz.size(); ++k) {
    if (sgn(dz[k]) == 0) continue;
    out.push_back(QSeries::Term{start + static_cast<std::int64_t>(k) * step, divide(dz[k], den)});
  }
  return make_sorted(std::move(out), precision);
}

QSeries mul_naive(const QSeries& a, const QSeries& b) {
  const std::int64_t precision = product_precision(a, b);
  std::map<std::int64_t, Rational> acc;
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      const std::int64_t index = s.index + t.index;
      if (index >= precision) break;
      acc[index] += s.coeff * t.coeff;
    }
  }
  Terms out;
  for (auto& [index, c] : acc) {
    if (sgn(c) != 0) out.push_back(QSeries::Term{index, c});
  }
  return make_sorted(std::move(out), precision);
}

QSeries invert(const QSeries& a, std::int64_t max_precision) {
  if (a.is_zero()) {
    throw Error(ErrorKind::ZeroLeadingCoefficient, "cannot invert a series with no known nonzero term");
  }
  const std::int64_t v = a.min_index();
  const Rational& lead = a.terms().front().coeff;
  const std::int64_t precision =
      a.is_exact() ? max_precision : std::min(precision_add(a.precision(), -2 * v), max_precision);
  if (a.size() == 1) return QSeries::monomial(-v, 1 / lead, precision);
  if (precision == QSeries::kExact) {
    throw Error(ErrorKind::InsufficientPrecision, "inverting an exact non-monomial series needs a precision cap");
  }
  const std::int64_t step = lattice_step(a.terms());
  if (precision <= -v) return QSeries::zero(precision);
  const std::size_t len = static_cast<std::size_t>(ceil_div(precision + v, step));

  // Sparse tail u_j (j >= 1) of a / (lead q^v), indexed in lattice steps.
  struct Tail {
    std::size_t j;
    Rational c;
  };
  std::vector<Tail> tail;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const auto j = static_cast<std::size_t>((a.terms()[i].index - v) / step);
    if (j >= len) break;
    tail.push_back(Tail{j, a.terms()[i].coeff});
  }

  Terms out;
  const bool unit_lead = lead == 1 || lead == -1;
  const bool integral = unit_lead && std::all_of(tail.begin(), tail.end(), [](const Tail& t) { return is_integer(t.c); });
  if (integral) {
    // b_k = -lead * sum_j u_j b_{k-j}, using 1/lead = lead.
    struct SmallTail {
      std::size_t j;
      long c;
      const Integer* big;
    };
    std::vector<SmallTail> small;
    std::vector<Integer> bigs;
    bigs.reserve(tail.size());
    for (const auto& t : tail) {
      bigs.push_back(t.c.get_num());
      const bool fits = mpz_fits_slong_p(bigs.back().get_mpz_t());
      small.push_back(SmallTail{t.j, fits ? mpz_get_si(bigs.back().get_mpz_t()) : 0, fits ? nullptr : &bigs.back()});
    }
    std::vector<Integer> b(len);
    b[0] = lead.get_num();
    const bool negate_lead = lead == 1;
    Integer acc;
    for (std::size_t k = 1; k < len; ++k) {
      acc = 0;
      mpz_ptr ap = acc.get_mpz_t();
      for (const auto& t : small) {
        if (t.j > k) break;
        mpz_srcptr bk = b[k - t.j].get_mpz_t();
        if (t.big != nullptr) {
          mpz_addmul(ap, t.big->get_mpz_t(), bk);
        } else if (t.c == 1) {
          mpz_add(ap, ap, bk);
        } else if (t.c == -1) {
          mpz_sub(ap, ap, bk);
        } else if (t.c > 0) {
          mpz_addmul_ui(ap, bk, static_cast<unsigned long>(t.c));
        } else {
          mpz_submul_ui(ap, bk, static_cast<unsigned long>(-t.c));
        }
      }
      if (negate_lead) {
        mpz_neg(b[k].get_mpz_t(), ap);
      } else {
        mpz_swap(b[k].get_mpz_t(), ap);
      }
    }
    for (std::size_t k = 0; k < len; ++k) {
      if (sgn(b[k]) != 0) out.push_back(QSeries::Term{-v + static_cast<std::int64_t>(k) * step, Rational(b[k])});
    }
  } else {
    const Rational inv_lead = 1 / lead;
    std::vector<Rational> b(len);
    b[0] = inv_lead;
    Rational acc;
    for (std::size_t k = 1; k < len; ++k) {
      acc = 0;
      for (const auto& t : tail) {
        if (t.j > k) break;
        acc += t.c * b[k - t.j];
      }
      b[k] = -inv_lead * acc;
    }
    for (std::size_t k = 0; k < len; ++k) {
      if (sgn(b[k]) != 0) out.push_back(QSeries::Term{-v + static_cast<std::int64_t>(k) * step, b[k]});
    }
  }
  return make_sorted(std::move(out), precision);
}

QSeries pow(const QSeries& a, std::int64_t k, std::int64_t max_precision) {
  if (k == 0) return QSeries::one().truncate(max_precision);
  QSeries base = k < 0 ? invert(a, max_precision) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  if (max_precision != QSeries::kExact && !base.is_zero()) {
    // Each factor only matters below max_precision - (e-1) * leading index.
    base = base.truncate(precision_add(max_precision, -static_cast<std::int64_t>(e - 1) * base.min_index()));
  }
  QSeries result = QSeries::one();
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : mul(result, base);
      first = false;
    }
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result.truncate(max_precision);
}

QSeries q_derivative(const QSeries& a) {
  Terms out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    if (t.index % QSeries::kUnit != 0) {
      throw Error(ErrorKind::NonIntegralExponent,
                  "q d/dq needs integral exponents; found index " + std::to_string(t.index), t.index);
    }
    const std::int64_t n = t.index / QSeries::kUnit;
    if (n != 0) out.push_back(QSeries::Term{t.index, t.coeff * to_rational(n)});
  }
  return make_sorted(std::move(out), a.precision());
}

QSeries dilate(const QSeries& a, std::int64_t t) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "dilation factor must be positive");
  Terms out = a.terms();
  for (auto& term : out) term.index *= t;
  return make_sorted(std::move(out), precision_mul(a.precision(), t));
}

QSeries restrict_progression(const QSeries& a, std::int64_t r, std::int64_t modulus) {
  if (modulus < 1) throw Error(ErrorKind::InvalidArgument, "progression modulus must be positive");
  Terms out;
  for (const auto& t : a.terms()) {
    if (t.index % QSeries::kUnit != 0) {
      throw Error(ErrorKind::NonIntegralExponent,
                  "progression restriction needs integral exponents; found index " + std::to_string(t.index),
                  t.index);
    }
    const std::int64_t n = t.index / QSeries::kUnit;
    if (floor_div(n - r, modulus) * modulus == n - r) out.push_back(t);
  }
  return make_sorted(std::move(out), a.precision());
}

QSeries rescale_exponents(const QSeries& a, std::int64_t t) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "rescaling factor must be positive");
  Terms out = a.terms();
  for (auto& term : out) {
    if (term.index % QSeries::kUnit != 0) {
      throw Error(ErrorKind::NonIntegralExponent,
                  "rescaling needs integral exponents; found index " + std::to_string(term.index), term.index);
    }
    const std::int64_t n = term.index / QSeries::kUnit;
    if (n % t != 0) {
      throw Error(ErrorKind::IndivisibleExponent,
                  "exponent " + std::to_string(n) + " is not divisible by " + std::to_string(t), n);
    }
    term.index /= t;
  }
  const std::int64_t precision = a.is_exact() ? QSeries::kExact : ceil_div(a.precision(), t);
  return make_sorted(std::move(out), precision);
}

QSeries reduce_mod(const QSeries& a, std::int64_t ell, int m) {
  if (ell < 2 || m < 1) throw Error(ErrorKind::InvalidArgument, "reduce_mod needs ell >= 2 and m >= 1");
  Integer modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(m));
  Terms out;
  Integer inv, r;
  for (const auto& t : a.terms()) {
    if (t.coeff.get_den() == 1) {
      mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_num_mpz_t(), modulus.get_mpz_t());
    } else {
      if (mpz_divisible_ui_p(t.coeff.get_den_mpz_t(), static_cast<unsigned long>(ell))) {
        throw Error(ErrorKind::DenominatorDivisibleByEll,
                    "coefficient " + t.coeff.get_str() + " at index " + std::to_string(t.index) +
                        " has denominator divisible by " + std::to_string(ell),
                    t.index);
      }
      mpz_invert(inv.get_mpz_t(), t.coeff.get_den_mpz_t(), modulus.get_mpz_t());
      r = t.coeff.get_num() * inv;
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    }
    if (sgn(r) != 0) out.push_back(QSeries::Term{t.index, Rational(r)});
  }
  return make_sorted(std::move(out), a.precision());
}

std::int64_t first_difference(const QSeries& a, const QSeries& b) {
  const std::int64_t precision = std::min(a.precision(), b.precision());
  const auto x = below(a.terms(), precision);
  const auto y = below(b.terms(), precision);
  std::size_t i = 0;
  for (; i < x.size() && i < y.size(); ++i) {
    if (x[i].index != y[i].index) return std::min(x[i].index, y[i].index);
    if (x[i].coeff != y[i].coeff) return x[i].index;
  }
  if (i < x.size()) return x[i].index;
  if (i < y.size()) return y[i].index;
  return precision;
}

bool agree(const QSeries& a, const QSeries& b) {
  return first_difference(a, b) == std::min(a.precision(), b.precision());
}

std::string to_display_string(const QSeries& a, std::size_t max_terms) {
  std::ostringstream os;
  auto exponent = [](std::int64_t index) {
    if (index % QSeries::kUnit == 0) return std::to_string(index / QSeries::kUnit);
    Rational e(to_integer(index), to_integer(QSeries::kUnit));
    e.canonicalize();
    return "(" + e.get_str() + ")";
  };
  std::size_t shown = 0;
  for (const auto& t : a.terms()) {
    if (shown == max_terms) {
      os << " + ...";
      break;
    }
    Rational c = t.coeff;
    if (shown > 0) {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    }
    const bool constant = t.index == 0;
    if (constant) {
      os << c.get_str();
    } else {
      if (c == -1) os << "-";
      else if (c != 1) os << c.get_str() << "*";
      os << "q^" << exponent(t.index);
    }
    ++shown;
  }
  if (shown == 0) os << "0";
  if (!a.is_exact()) os << " + O(q^" << exponent(a.precision()) << ")";
  return os.str();
}

}  // namespace smallparts

#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "smallparts/forms.hpp"
#include "smallparts/hecke.hpp"

using namespace smallparts;

namespace {

constexpr std::int64_t U = QSeries::kUnit;

// Dense reference for one T(ell^2): loop over the output exponents and read
// the three source coefficients the formula names.
QSeries hecke_reference(const QSeries& f, std::int64_t ell, const Character& chi) {
  const std::int64_t l2 = ell * ell;
  const std::int64_t lo = floor_div(f.min_index() / U, 1) * l2 - l2;
  const std::int64_t hi = ceil_div(f.q_precision(), l2);
  std::vector<QSeries::Term> terms;
  for (std::int64_t n = std::min<std::int64_t>(lo, -l2 * l2); n < hi; ++n) {
    Rational c = f.coeff_q(n * l2);
    c += Rational(chi(ell) * kronecker(-n, ell)) * f.coeff_q(n);
    if (n % l2 == 0) c += Rational(ell) * f.coeff_q(n / l2);
    if (c != 0) terms.push_back({n * U, c});
  }
  return QSeries(std::move(terms), hi * U);
}

}  // namespace

TEST_CASE("T(25) on q^-1 with the (3/.) character") {
  const QSeries q_inv = QSeries::monomial(-U, Rational(1), 2000 * U);
  const QSeries t = apply_T_ell_squared(q_inv, 5, Character{12});
  CHECK(t.coeff_q(-25) == 5);
  CHECK(t.coeff_q(-1) == -1);
  CHECK(t.size() == 2);
  CHECK(apply_T_ell_squared(QSeries::zero(100 * U), 5, Character{12}).is_zero());
}

TEST_CASE("single T(ell^2) matches the dense reference") {
  std::mt19937_64 rng(11);
  for (std::int64_t ell : {3, 5, 7}) {
    for (std::int64_t d : {1, 12, -4}) {
      const Character chi{d};
      if (chi(ell) == 0) continue;
      const QSeries f = oracle::random_series(rng, -3, 600, 0.5, 20, true);
      CHECK(apply_T_ell_squared(f, ell, chi) == hecke_reference(f, ell, chi));
    }
  }
}

TEST_CASE("Mbar is a T(9) eigenform with eigenvalue 4") {
  FormBuilder builder;
  const QSeries mbar = builder.form(FormName::MBAR, 9 * 60);
  const QSeries t = apply_T_ell_squared(mbar, 3, Character{1});
  CHECK(t.q_precision() == 60);
  CHECK(agree(t, scale(mbar, Rational(4))));
}

TEST_CASE("T powers: m = 0, principal part at ell = 5, precision errors") {
  FormBuilder builder;
  const QSeries mstar = builder.form(FormName::MSTAR, 625 * 30);
  HeckeTriple triple(mstar, 5, Character{12});
  CHECK(apply_T_power(triple, 0) == mstar);
  const QSeries t2 = apply_T_power(triple, 2, 30);
  CHECK(t2.coeff_q(-625) == 25);
  CHECK(t2.coeff_q(-25) == -5);
  CHECK(t2.coeff_q(-1) == 1);
  for (int n = 0; n < 23; ++n) CHECK(t2.coeff_q(n) == 0);

  try {
    (void)apply_T_power(triple, 2, 31);
    FAIL("expected InsufficientPrecision");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientPrecision);
    CHECK(e.index() == 625 * 31);
  }
  CHECK(hecke_output_q_precision(625 * 30, 5, 2) == 30);
}

TEST_CASE("F_1 and the F_m recursion on M*") {
  FormBuilder builder;
  const QSeries mstar = builder.form(FormName::MSTAR, 625 * 20);
  HeckeTriple triple(mstar, 5, Character{12});
  const QSeries f1 = build_F_m(triple, 1, 500);
  CHECK(agree(f1, add(apply_T_ell_squared(mstar, 5, Character{12}), mstar)));
  const QSeries f2 = build_F_m(triple, 2, 20);
  const QSeries rec = sub(apply_T_ell_squared(f1, 5, Character{12}), scale(mstar, Rational(5)));
  CHECK(agree(f2, rec));

  HeckeTriple zero(QSeries::zero(1000 * U), 5, Character{12});
  CHECK(build_F_m(zero, 2).is_zero());
}

TEST_CASE("HeckeSpec validation") {
  CHECK_THROWS_AS((HeckeSpec{4, 1, Character{1}}.validate()), Error);
  CHECK_THROWS_AS((HeckeSpec{2, 1, Character{1}}.validate()), Error);
  CHECK_THROWS_AS((HeckeSpec{3, 1, Character{12}}.validate()), Error);
  CHECK_THROWS_AS((HeckeSpec{5, -1, Character{12}}.validate()), Error);
  CHECK_NOTHROW((HeckeSpec{5, 2, Character{12}}.validate()));
}

TEST_CASE("closed-form parts at m = 1 against direct application") {
  std::mt19937_64 rng(5);
  const QSeries f0 = oracle::random_series(rng, -1, 2500, 0.7, 50);
  const HeckeSpec spec{5, 1, Character{12}};
  HeckeTriple triple(f0, 5, spec.chi);
  const QSeries f1 = build_F_m(triple, 1, 100);
  auto a0 = [&](std::int64_t n) { return f0.coeff_q(n); };
  for (std::int64_t n = 1; n < 100; ++n) {
    if (n % 5 != 0) {
      // a1(n) = a0(25n) + (1 - (-n/5)) (-chi(5)) a0(n)
      const Rational expect = a0(25 * n) + Rational((1 - kronecker(-n, 5)) * -spec.chi_ell()) * a0(n);
      CHECK(prop22_closed_form(a0, spec, n, Prop22Part::II) == expect);
      CHECK(f1.coeff_q(n) == expect);
    } else if ((n / 5) % 5 != 0) {
      CHECK(prop22_closed_form(a0, spec, n, Prop22Part::III) == f1.coeff_q(n));
    }
  }
  CHECK_THROWS_AS(prop22_closed_form(a0, spec, 10, Prop22Part::II), Error);
  CHECK_THROWS_AS(prop22_closed_form(a0, spec, 50, Prop22Part::III), Error);
  CHECK_THROWS_AS(prop22_closed_form(a0, HeckeSpec{5, 0, Character{12}}, 1, Prop22Part::I), Error);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "smallparts/forms.hpp"
#include "smallparts/number_theory.hpp"

using namespace smallparts;

namespace {
constexpr std::int64_t U = QSeries::kUnit;
}

TEST_CASE("eta(24 tau) has pentagonal exponents and signs") {
  const QSeries e = eta_quotient({{{24, 1}}}, 400);
  CHECK(e.min_index() == U);
  CHECK(e.coeff_q(1) == 1);
  CHECK(e.coeff_q(25) == -1);
  CHECK(e.coeff_q(49) == -1);
  // eta(24 tau) = sum_k (-1)^k q^{(6k+1)^2}.
  for (int n = 0; n < 400; ++n) {
    Rational expect(0);
    for (int k = -10; k <= 10; ++k)
      if ((6 * k + 1) * (6 * k + 1) == n) expect = (k % 2 == 0) ? 1 : -1;
    CHECK(e.coeff_q(n) == expect);
  }
}

TEST_CASE("eta quotient leading index and class-number quotient") {
  const EtaQuotientSpec spec{{{16, 6}, {8, -3}}};
  CHECK(spec.leading_index() == 72);
  const QSeries q = eta_quotient(spec, 300);
  CHECK(q.coeff_q(3) == 1);
  CHECK(q.coeff_q(11) == 3);
  for (int n = 0; n < 300; ++n) {
    const Rational expect = (n % 8 == 3) ? 3 * oracle::hurwitz_reduced_count(n) : Rational(0);
    CHECK(q.coeff_q(n) == expect);
  }
}

TEST_CASE("E2 and theta") {
  const QSeries e2 = eisenstein_E2(50);
  CHECK(e2.coeff_q(0) == 1);
  CHECK(e2.coeff_q(1) == -24);
  CHECK(e2.coeff_q(2) == -72);
  CHECK(e2.coeff_q(3) == -96);
  for (int n = 1; n < 50; ++n) CHECK(e2.coeff_q(n) == -24 * oracle::sigma1(n));

  const QSeries th = theta(100);
  CHECK(th.coeff_q(0) == 1);
  CHECK(th.coeff_q(1) == 2);
  CHECK(th.coeff_q(3) == 0);
  for (int n = 1; n < 100; ++n) {
    int r = 0;
    for (int k = 1; k * k <= n; ++k) r += (k * k == n) ? 2 : 0;
    CHECK(th.coeff_q(n) == r);
  }
}

TEST_CASE("form names round trip") {
  for (FormName f : kAllForms) CHECK(parse_form_name(to_string(f)) == f);
  CHECK(to_string(FormName::MSTAR) == "mstar");
  CHECK(to_string(FormName::GBAR_LM) == "gbar_lm");
  CHECK(takes_params(FormName::H_LM));
  CHECK_FALSE(takes_params(FormName::GBAR));
  CHECK_FALSE(parse_form_name("mstar2").has_value());
}

TEST_CASE("named form expansions") {
  FormBuilder builder;
  const QSeries mstar = builder.form(FormName::MSTAR, 60);
  CHECK(mstar.coeff_q(-1) == 1);
  CHECK(mstar.coeff_q(23) == -35);
  CHECK(mstar.coeff_q(47) == -130);
  for (const auto& t : mstar.terms()) CHECK((t.index / U) % 24 == ((t.index / U) >= 0 ? 23 : -1));

  const QSeries m = builder.form(FormName::M, 60);
  CHECK(m.coeff_q(23) == Rational(35, 12));

  const QSeries gbar = builder.form(FormName::GBAR, 200);
  CHECK(gbar.coeff_q(-1) == 1);
  for (int n = 0; n < 7; ++n) CHECK(gbar.coeff_q(n) == 0);
  for (const auto& t : gbar.terms()) CHECK((((t.index / U) % 8) + 8) % 8 == 7);

  const QSeries mbar = builder.form(FormName::MBAR, 200);
  const QSeries fbar = builder.form(FormName::FBAR, 200);
  CHECK(add(scale(mbar, Rational(4)), fbar).is_zero());

  const QSeries m2 = builder.form(FormName::M2, 400);
  for (int n = 0; n < 400; ++n) {
    const Rational expect = (n % 8 == 7) ? oracle::hurwitz_reduced_count(n) : Rational(0);
    CHECK(m2.coeff_q(n) == expect);
  }

  const QSeries zh = builder.form(FormName::ZAGIER_H, 100);
  CHECK(zh.coeff_q(0) == Rational(-1, 12));
  for (int n = 1; n < 100; ++n) CHECK(zh.coeff_q(n) == oracle::hurwitz_reduced_count(n));
}

TEST_CASE("S and Sbar are the statistic series at the right exponents") {
  FormBuilder builder;
  const QSeries s = builder.form(FormName::S, 24 * 30);
  for (int n = 1; n < 30; ++n) CHECK(s.coeff_q(24 * n - 1) == oracle::spt(n));
  const QSeries sbar = builder.form(FormName::SBAR, 30);
  for (int n = 1; n < 30; ++n) CHECK(sbar.coeff_q(n) == oracle::sptbar1(n));
}

TEST_CASE("M minus S decompositions") {
  FormBuilder builder;
  const auto [m, s] = m_minus_s_decomposition(builder, Statistic::SPT, 24 * 40);
  const QSeries diff = sub(m, s);
  CHECK(diff.coeff_q(23) == Rational(23, 12));
  for (int n = 1; n < 40; ++n) CHECK(diff.coeff_q(24 * n - 1) == make_rational(to_integer((24 * n - 1) * oracle::partitions(n)), 12));
  CHECK_NOTHROW(m_minus_s_decomposition(builder, Statistic::SPTBAR1, 300));
  CHECK_NOTHROW(m_minus_s_decomposition(builder, Statistic::M2SPT, 300));
  CHECK_THROWS_AS(m_minus_s_decomposition(builder, Statistic::P, 30), Error);
}

TEST_CASE("ladder forms") {
  FormBuilder builder;
  const QSeries g51 = builder.form(FormName::G_LM, FormParams{5, 1}, 23);
  CHECK(g51.coeff_q(-25) == 5);
  CHECK(g51.coeff_q(-1) == 5);
  CHECK(g51.size() == 2);
  const QSeries g31 = builder.form(FormName::GBAR_LM, FormParams{3, 1}, 7);
  CHECK(g31.coeff_q(-9) == 3);
  CHECK(g31.size() == 1);
  CHECK_THROWS_AS(builder.form(FormName::G_LM, FormParams{3, 1}, 10), Error);
  CHECK_THROWS_AS(builder.form(FormName::G_LM, 10), Error);
}

TEST_CASE("disk cache is reused and corrupt files are rebuilt") {
  const auto dir = std::filesystem::temp_directory_path() / "smallparts-test-cache";
  std::filesystem::remove_all(dir);
  BuilderOptions options;
  options.cache_dir = dir;
  {
    FormBuilder builder(options);
    (void)builder.form(FormName::MSTAR, 50);
  }
  const auto path = dir / "form-mstar.json";
  REQUIRE(std::filesystem::exists(path));
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  {
    FormBuilder builder(options);
    CHECK(builder.form(FormName::MSTAR, 50).coeff_q(23) == -35);
  }
  // A readable but wrong entry is trusted as-is; the verification layer is
  // what catches it.
  {
    std::ofstream out(path);
    out << to_json(QSeries::monomial(-U, Rational(7), 1000 * U));
  }
  {
    FormBuilder builder(options);
    CHECK(builder.form(FormName::MSTAR, 50).coeff_q(-1) == 7);
  }
  std::filesystem::remove_all(dir);
}

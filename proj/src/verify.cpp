#include "smallparts/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "smallparts/hecke.hpp"
#include "smallparts/number_theory.hpp"

namespace smallparts {

namespace {

constexpr std::int64_t kU = QSeries::kUnit;

VerificationReport make_report(std::string claim, std::optional<std::int64_t> ell, std::optional<int> m,
                               std::optional<IndexRange> range) {
  VerificationReport r;
  r.claim = std::move(claim);
  r.ell = ell;
  r.m = m;
  r.range = range;
  return r;
}

void fail(VerificationReport& report, std::int64_t n, std::string detail, std::string residue) {
  report.status = ClaimStatus::Counterexample;
  report.first_failure = FirstFailure{n, std::move(detail), std::move(residue)};
}

void require_range(IndexRange r) {
  if (r.hi < r.lo) throw Error(ErrorKind::InvalidArgument, "empty index range");
}

/// Smallest 12^k clearing every denominator of `a`; throws if some denominator
/// has a prime factor other than 2 or 3.
Integer twelve_power_clearing(const QSeries& a, int& k) {
  Integer d = 1;
  for (const auto& t : a.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.coeff.get_den_mpz_t());
  Integer power = 1;
  k = 0;
  while (power % d != 0) {
    power *= 12;
    if (++k > 64) throw Error(ErrorKind::DenominatorDivisibleByEll, "denominators are not powers of 2 and 3");
  }
  return power;
}

/// Clears denominators divisible by ell with a power of 12, noting the scaling.
QSeries ell_integral(const QSeries& a, std::int64_t ell, VerificationReport& report) {
  bool bad = false;
  for (const auto& t : a.terms()) {
    if (mpz_divisible_ui_p(t.coeff.get_den_mpz_t(), static_cast<unsigned long>(ell)) != 0) {
      bad = true;
      break;
    }
  }
  if (!bad) return a;
  int k = 0;
  const Integer power = twelve_power_clearing(a, k);
  report.notes.push_back("coefficients multiplied by 12^" + std::to_string(k) + " to clear denominators");
  return scale(a, Rational(power));
}

/// Reports the first exponent in `exponents` where the series `diff` is nonzero.
void expect_zero_on(VerificationReport& report, const QSeries& diff, IndexRange exponents, const std::string& what) {
  if (diff.precision() < (exponents.hi + 1) * kU) {
    throw Error(ErrorKind::InsufficientPrecision, what + " is known only below index " +
                                                      std::to_string(diff.precision()), exponents.hi + 1);
  }
  report.checked = exponents.hi - exponents.lo + 1;
  for (const auto& t : diff.terms()) {
    if (t.index < exponents.lo * kU) continue;
    if (t.index > exponents.hi * kU) break;
    fail(report, floor_div(t.index, kU), what + " differs at q^" + std::to_string(floor_div(t.index, kU)),
         t.coeff.get_str());
    return;
  }
}

}  // namespace

std::string_view to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Verified: return "verified";
    case ClaimStatus::Counterexample: return "counterexample";
    case ClaimStatus::Skipped: return "skipped";
  }
  return "?";
}

std::string reports_to_json(const std::vector<VerificationReport>& reports, bool include_metadata) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["claim"] = r.claim;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    if (r.ell) params["ell"] = *r.ell;
    if (r.m) params["m"] = *r.m;
    if (r.range) params["range"] = {r.range->lo, r.range->hi};
    j["params"] = params;
    j["status"] = std::string(to_string(r.status));
    j["checked"] = r.checked;
    if (r.first_failure) {
      j["first_failure"] = {{"n", r.first_failure->n},
                            {"detail", r.first_failure->detail},
                            {"residue", r.first_failure->residue}};
    } else {
      j["first_failure"] = nullptr;
    }
    if (r.margin) j["margin"] = *r.margin;
    j["notes"] = r.notes;
    if (include_metadata) j["metadata"] = {{"wall_time", r.wall_time}};
    out.push_back(std::move(j));
  }
  return out.dump(2);
}

Integer residue_mod(const Rational& x, std::int64_t ell, int m) {
  const Integer modulus = to_integer(checked_pow(ell, m));
  if (mpz_divisible_ui_p(x.get_den_mpz_t(), static_cast<unsigned long>(ell)) != 0) {
    throw Error(ErrorKind::DenominatorDivisibleByEll,
                "denominator of " + x.get_str() + " is divisible by " + std::to_string(ell));
  }
  Integer inverse;
  mpz_invert(inverse.get_mpz_t(), x.get_den_mpz_t(), modulus.get_mpz_t());
  Integer r = x.get_num() * inverse;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

std::optional<std::int64_t> AffineIndex::operator()(std::int64_t n) const {
  const std::int64_t v = a * n + b;
  if (v % c != 0) return std::nullopt;
  const std::int64_t k = v / c;
  if (k < 0) return std::nullopt;
  return k;
}

std::int64_t AffineIndex::last_n_within(std::int64_t argument_bound) const {
  return floor_div(c * argument_bound - b, a);
}

VerificationReport check_congruence_family(const CongruenceFamily& family, IndexRange n_range) {
  require_range(n_range);
  VerificationReport report = make_report(family.claim, family.ell, family.m, n_range);
  auto read = [&](std::int64_t k) {
    if (k >= family.source.limit) {
      throw Error(ErrorKind::InsufficientPrecision,
                  family.source.name + "(" + std::to_string(k) + ") lies beyond the built range " +
                      std::to_string(family.source.limit),
                  k + 1);
    }
    return family.source.at(k);
  };
  for (std::int64_t n = n_range.lo; n <= n_range.hi; ++n) {
    const auto k0 = family.index_map(n);
    if (!k0) continue;
    std::vector<std::int64_t> ks;
    bool defined = true;
    for (const auto& term : family.comparison) {
      const auto k = term.index(n);
      if (!k) {
        defined = false;
        break;
      }
      ks.push_back(*k);
    }
    if (!defined) continue;
    if (family.side_condition && kronecker(-n, family.side_condition->ell) != family.side_condition->value) continue;
    Rational value = read(*k0);
    std::string expression = family.source.name + "(" + std::to_string(*k0) + ")";
    for (std::size_t i = 0; i < ks.size(); ++i) {
      value += to_rational(family.comparison[i].coefficient) * read(ks[i]);
      expression += (family.comparison[i].coefficient < 0 ? " - " : " + ") +
                    std::to_string(std::abs(family.comparison[i].coefficient)) + "*" + family.source.name + "(" +
                    std::to_string(ks[i]) + ")";
    }
    ++report.checked;
    const Integer r = residue_mod(value, family.ell, family.m);
    if (r != 0) {
      fail(report, n, expression + " is not 0 mod " + std::to_string(family.ell) + "^" + std::to_string(family.m),
           r.get_str());
      return report;
    }
  }
  return report;
}

VerificationReport check_hecke_congruence(FormBuilder& builder, FormName form, std::int64_t ell, int m,
                                          IndexRange exponents) {
  require_range(exponents);
  const Character chi{form == FormName::MSTAR ? 12 : 1};
  HeckeSpec{ell, m, chi}.validate();
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "Hecke congruences need m >= 1");
  VerificationReport report =
      make_report(std::string(to_string(form)) + ".hecke-congruence", ell, m, exponents);
  const std::int64_t n = std::max<std::int64_t>(exponents.hi + 1, 1);
  const std::int64_t big_l = checked_pow(ell, 2 * m);
  HeckeTriple triple(builder.form(form, big_l * n), ell, chi);
  apply_T_power(triple, m, n);
  QSeries fm = triple.combination(m).truncate(n * kU);
  if (form == FormName::MSTAR) report.notes.push_back("checked on M* = -12 M; -12 is a unit mod ell");
  fm = ell_integral(fm, ell, report);
  report.checked = exponents.hi - exponents.lo + 1;
  for (const auto& t : fm.terms()) {
    const std::int64_t e = floor_div(t.index, kU);
    if (e < exponents.lo || e > exponents.hi) continue;
    const Integer r = residue_mod(t.coeff, ell, m);
    if (r != 0) {
      fail(report, e,
           "coefficient of q^" + std::to_string(e) + " is not 0 mod " + std::to_string(ell) + "^" + std::to_string(m),
           r.get_str());
      break;
    }
  }
  return report;
}

VerificationReport check_eigenform(FormBuilder& builder, FormName form, std::int64_t ell, const Rational& eigenvalue,
                                   IndexRange exponents) {
  require_range(exponents);
  VerificationReport report = make_report(std::string(to_string(form)) + ".eigenform", ell, std::nullopt, exponents);
  const std::int64_t n = std::max<std::int64_t>(exponents.hi + 1, 1);
  const QSeries f = builder.form(form, ell * ell * n);
  const QSeries image = apply_T_ell_squared(f, ell, Character{1});
  const QSeries diff = sub(image, scale(f, eigenvalue)).truncate(n * kU);
  report.notes.push_back("eigenvalue " + eigenvalue.get_str() + ", exact comparison");
  expect_zero_on(report, diff, exponents, std::string(to_string(form)) + "|T - lambda " + std::string(to_string(form)));
  return report;
}

std::string_view to_string(IdentityId id) {
  switch (id) {
    case IdentityId::FourMbarPlusFbar: return "identity.four-mbar-plus-fbar";
    case IdentityId::M2ClassNumbers: return "identity.m2-class-numbers";
    case IdentityId::ClassNumberEta: return "identity.class-number-eta-quotient";
    case IdentityId::SptDecomposition: return "identity.spt-decomposition";
    case IdentityId::QuarterH: return "identity.sbar-decomposition";
    case IdentityId::M2Decomposition: return "identity.m2-decomposition";
    case IdentityId::Trivial: return "identity.trivial";
  }
  return "?";
}

VerificationReport check_identity(FormBuilder& builder, IdentityId id, IndexRange exponents) {
  VerificationReport report = make_report(std::string(to_string(id)), std::nullopt, std::nullopt, exponents);
  if (id == IdentityId::Trivial) {
    report.checked = 0;
    return report;
  }
  require_range(exponents);
  const std::int64_t n = std::max<std::int64_t>(exponents.hi + 1, 1);
  QSeries lhs;
  QSeries rhs;
  switch (id) {
    case IdentityId::FourMbarPlusFbar:
      lhs = add(scale(builder.form(FormName::MBAR, n), Rational(4)), builder.form(FormName::FBAR, n));
      rhs = QSeries::zero(n * kU);
      break;
    case IdentityId::M2ClassNumbers: {
      lhs = builder.form(FormName::M2, n);
      std::vector<QSeries::Term> terms;
      for (std::int64_t k = 1; 8 * k - 1 < n; ++k) {
        terms.push_back(QSeries::Term{(8 * k - 1) * kU, hurwitz_class_number(8 * k - 1)});
      }
      rhs = QSeries(std::move(terms), n * kU);
      break;
    }
    case IdentityId::ClassNumberEta:
      lhs = scale(restrict_progression(builder.form(FormName::ZAGIER_H, n), 3, 8), Rational(3));
      rhs = eta_quotient(EtaQuotientSpec{{{16, 6}, {8, -3}}}, n);
      break;
    case IdentityId::SptDecomposition:
    case IdentityId::QuarterH:
    case IdentityId::M2Decomposition: {
      const Statistic which = id == IdentityId::SptDecomposition ? Statistic::SPT
                              : id == IdentityId::QuarterH       ? Statistic::SPTBAR1
                                                                 : Statistic::M2SPT;
      try {
        m_minus_s_decomposition(builder, which, n);
        report.checked = exponents.hi - exponents.lo + 1;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DecompositionMismatch) throw;
        fail(report, floor_div(e.index(), kU), e.what(), "");
      }
      return report;
    }
    case IdentityId::Trivial:
      break;
  }
  expect_zero_on(report, sub(lhs, rhs), exponents, "left side minus right side");
  return report;
}

VerificationReport sturm_certify(FormBuilder& builder, std::int64_t ell, int m, SturmFamily family) {
  const bool spt_side = family == SturmFamily::SPT;
  const std::int64_t big_l = checked_pow(ell, 2 * m);
  VerificationReport report =
      make_report(std::string(spt_side ? "sturm.spt" : "sturm.overpartition"), ell, m, std::nullopt);
  if (big_l > 700) {
    throw Error(ErrorKind::GuardExceeded,
                "ell^{2m} = " + std::to_string(big_l) + " exceeds the desk-scale guard 700", big_l);
  }
  const std::int64_t level = spt_side ? 1 : 2;
  const std::int64_t twice_weight = big_l + 3;
  const std::int64_t bound = sturm_bound(twice_weight, level);
  const std::int64_t t = spt_side ? 24 : 8;
  const std::int64_t order = (big_l + t - 1) / t;
  report.margin = order - bound;
  const std::int64_t n = order + 24;
  report.range = IndexRange{0, n - 1};
  report.notes.push_back("weight " + std::to_string(twice_weight / 2) + " level " + std::to_string(level) +
                         ", Sturm bound " + std::to_string(bound) + ", claimed order " + std::to_string(order));

  // (a) F is supported on multiples of t, so the rescaling is legitimate and H is holomorphic.
  const FormParams params{ell, m};
  const QSeries f = builder.form(spt_side ? FormName::F_LM : FormName::FBAR_LM, params, t * n);
  for (const auto& term : f.terms()) {
    if (term.index % (t * kU) != 0 || term.index < 0) {
      fail(report, floor_div(term.index, kU), "F has a term off the non-negative multiples of " + std::to_string(t),
           term.coeff.get_str());
      return report;
    }
  }
  const QSeries h = builder.form(spt_side ? FormName::H_LM : FormName::HBAR_LM, params, n);
  // (b), (c) and the remaining prefix: everything must vanish mod ell^m.
  for (std::int64_t k = 0; k < n; ++k) {
    const Integer r = residue_mod(h.coeff_q(k), ell, m);
    ++report.checked;
    if (r != 0) {
      const std::string stage = k <= bound ? "Sturm prefix" : k < order ? "claimed vanishing order" : "beyond order";
      fail(report, k, stage + ": coefficient of q^" + std::to_string(k) + " is not 0 mod " + std::to_string(ell) +
                          "^" + std::to_string(m),
           r.get_str());
      return report;
    }
  }
  if (*report.margin <= 0) fail(report, order, "claimed order does not exceed the Sturm bound", "");
  return report;
}

VerificationReport check_mtilde_extras(FormBuilder& builder, std::int64_t ell, int m, IndexRange exponents) {
  require_range(exponents);
  const Character chi{12};
  HeckeSpec{ell, m, chi}.validate();
  VerificationReport report = make_report("mstar.extras", ell, m, exponents);
  report.notes.push_back("checked on M* = -12 M; -12 is a unit mod ell");
  const std::int64_t n = std::max<std::int64_t>(exponents.hi + 1, 1);
  const QSeries mstar = builder.form(FormName::MSTAR, checked_pow(ell, 2 * m + 1) * n);
  const QSeries s = builder.form(FormName::S, checked_pow(ell, 2 * m) * n);
  const int c = chi(ell);
  auto alternating = [&](const QSeries& a, std::int64_t k) {
    Rational value = a.coeff_q(checked_pow(ell, 2 * m) * k);
    Rational weight(2);
    for (int j = 1; j <= m; ++j) {
      weight *= -c;
      value += weight * a.coeff_q(checked_pow(ell, 2 * m - 2 * j) * k);
    }
    return value;
  };
  std::optional<std::int64_t> s_failure;
  for (std::int64_t k = std::max<std::int64_t>(exponents.lo, 1); k <= exponents.hi; ++k) {
    if (kronecker(-k, ell) == -1 && (k % 24 == 23)) {
      ++report.checked;
      const Integer r = residue_mod(alternating(mstar, k), ell, m);
      if (r != 0) {
        fail(report, k, "alternating combination on the inert stratum at n = " + std::to_string(k), r.get_str());
        return report;
      }
      if (!s_failure && residue_mod(alternating(s, k), ell, m) != 0) s_failure = k;
    }
    if ((ell * k) % 24 == 23) {
      ++report.checked;
      const Rational value = mstar.coeff_q(checked_pow(ell, 2 * m + 1) * k) -
                             to_rational(c) * mstar.coeff_q(checked_pow(ell, 2 * m - 1) * k);
      const Integer r = residue_mod(value, ell, m);
      if (r != 0) {
        fail(report, k, "odd-power shift combination at n = " + std::to_string(k), r.get_str());
        return report;
      }
    }
  }
  report.notes.push_back(s_failure ? "same alternating combination on S fails first at n = " + std::to_string(*s_failure)
                                   : "same alternating combination on S holds on the checked range");
  return report;
}

VerificationReport check_consistency_closure(FormBuilder& builder, std::int64_t ell, int m, IndexRange exponents) {
  require_range(exponents);
  const Character chi{12};
  const HeckeSpec spec{ell, m, chi};
  spec.validate();
  VerificationReport report = make_report("spt.closure", ell, m, exponents);
  const std::int64_t n = std::max<std::int64_t>(exponents.hi + 1, 1);
  const std::int64_t big_l = checked_pow(ell, 2 * m);
  const QSeries mstar = builder.form(FormName::MSTAR, big_l * n);
  HeckeTriple triple(mstar, ell, chi);
  apply_T_power(triple, m, n);
  const QSeries fm = triple.combination(m);
  const QSeries spt = builder.statistic(Statistic::SPT, (big_l * n + 1) / 24 + 1);
  const QSeries p = builder.statistic(Statistic::P, (big_l * n + 1) / 24 + 1);
  const CoefficientAccessor a0 = [&](std::int64_t k) { return mstar.coeff_q(k); };
  for (std::int64_t k = std::max<std::int64_t>(exponents.lo, 1); k <= exponents.hi; ++k) {
    if (k % 24 != 23 || kronecker(-k, ell) != 1) continue;
    ++report.checked;
    const Rational computed = fm.coeff_q(k);
    const Rational closed = prop22_closed_form(a0, spec, k, Prop22Part::II);
    if (computed != closed) {
      fail(report, k, "Hecke combination differs from the closed form", Rational(computed - closed).get_str());
      return report;
    }
    if (residue_mod(computed, ell, m) != 0) {
      fail(report, k, "Hecke combination does not vanish", residue_mod(computed, ell, m).get_str());
      return report;
    }
    // m(L k) = spt(j) + (L k) p(j) / 12 with j = (L k + 1) / 24.
    const std::int64_t j = (big_l * k + 1) / 24;
    const Rational m_coeff = mstar.coeff_q(big_l * k) / Rational(-12);
    if (m_coeff - spt.coeff_q(j) != make_rational(to_integer(big_l * k), 12) * p.coeff_q(j)) {
      fail(report, k, "M - S decomposition fails at q^" + std::to_string(big_l * k), "");
      return report;
    }
    const Integer r = residue_mod(spt.coeff_q(j), ell, m);
    if (r != 0) {
      fail(report, k, "spt(" + std::to_string(j) + ") does not inherit the vanishing", r.get_str());
      return report;
    }
  }
  return report;
}

VerificationReport check_ladder(FormBuilder& builder, FormName form, std::int64_t ell, int m, IndexRange exponents) {
  require_range(exponents);
  const bool spt_side = form == FormName::G_LM;
  if (!spt_side && form != FormName::GBAR_LM) throw Error(ErrorKind::InvalidArgument, "ladders exist for g_lm and gbar_lm");
  const std::int64_t big_l = checked_pow(ell, 2 * m);
  const Rational lead = to_rational(checked_pow(ell, m));
  VerificationReport report = make_report(std::string(to_string(form)) + ".ladder", ell, m, exponents);
  if (spt_side) {
    const int chi_m = (m % 2 == 0) ? 1 : kronecker(12, ell);
    const std::int64_t top = std::min<std::int64_t>(exponents.hi + 1, 23);
    const QSeries g = builder.form(form, FormParams{ell, m}, top);
    const QSeries expected({{-big_l * kU, lead}, {-kU, -to_rational(chi_m) * lead}}, top * kU);
    expect_zero_on(report, sub(g, expected), IndexRange{std::max(exponents.lo, -big_l), top - 1},
                   "principal part");
    return report;
  }
  const std::int64_t n = std::max<std::int64_t>(exponents.hi + 1, 8);
  const QSeries g = builder.form(form, FormParams{ell, m}, n);
  const QSeries head({{-big_l * kU, lead}}, 7 * kU);
  expect_zero_on(report, sub(g.truncate(7 * kU), head), IndexRange{std::max(exponents.lo, -big_l), 6},
                 "leading terms");
  if (report.failed()) return report;
  for (const auto& t : g.terms()) {
    const std::int64_t e = floor_div(t.index, kU);
    if (((e % 8) + 8) % 8 != 7) {
      fail(report, e, "term off the 7 mod 8 progression", t.coeff.get_str());
      return report;
    }
  }
  report.checked = exponents.hi - std::max(exponents.lo, -big_l) + 1;
  return report;
}

VerificationReport check_oracle(FormBuilder& builder, Statistic s, IndexRange n_range) {
  require_range(n_range);
  VerificationReport report = make_report("oracle." + std::string(to_string(s)), std::nullopt, std::nullopt, n_range);
  const QSeries series = builder.statistic(s, n_range.hi + 1);
  const std::int64_t ceiling = std::max<std::int64_t>(builder.options().oracle_ceiling, n_range.hi);
  for (std::int64_t k = std::max<std::int64_t>(n_range.lo, 0); k <= n_range.hi; ++k) {
    ++report.checked;
    const Rational expected(enumerate_oracle(s, k, ceiling));
    if (series.coeff_q(k) != expected) {
      fail(report, k, "generating function gives " + series.coeff_q(k).get_str() + ", enumeration " +
                          expected.get_str(), "");
      return report;
    }
  }
  return report;
}

VerificationReport run_claim(const Claim& claim, FormBuilder& builder, std::optional<IndexRange> range) {
  const auto start = std::chrono::steady_clock::now();
  const IndexRange r = range.value_or(claim.range);
  VerificationReport report;
  try {
    report = claim.run(builder, r);
  } catch (const Error& e) {
    report = make_report(claim.id, claim.ell, claim.m, r);
    if (e.kind() == ErrorKind::GuardExceeded) {
      report.status = ClaimStatus::Skipped;
      report.notes.push_back(e.what());
    } else {
      fail(report, e.index(), std::string(to_string(e.kind())) + ": " + e.what(), "");
    }
  } catch (const std::exception& e) {
    report = make_report(claim.id, claim.ell, claim.m, r);
    fail(report, 0, std::string("internal error: ") + e.what(), "");
  }
  report.claim = claim.id;
  report.ell = claim.ell;
  report.m = claim.m;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

VerificationReport replay(const Claim& claim, const VerificationReport& report, FormBuilder& builder) {
  if (!report.first_failure) return run_claim(claim, builder);
  const std::int64_t n = report.first_failure->n;
  return run_claim(claim, builder, IndexRange{n, n});
}

std::vector<VerificationReport> run_claims(const std::vector<Claim>& claims, FormBuilder& builder, int jobs) {
  std::vector<VerificationReport> reports(claims.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < claims.size(); i = next++) reports[i] = run_claim(claims[i], builder);
  };
  const int threads = std::clamp(jobs, 1, 64);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) { return a.claim < b.claim; });
  return reports;
}

}  // namespace smallparts

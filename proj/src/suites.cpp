#include <memory>

#include "smallparts/number_theory.hpp"
#include "smallparts/verify.hpp"

namespace smallparts {

namespace {

constexpr std::int64_t kSptArgumentBound = 100000;
constexpr std::int64_t kClassicalArgumentBound = 50000;
constexpr std::int64_t kOverpartitionArgumentBound = 50000;
constexpr std::int64_t kM2ArgumentBound = 50000;

std::string tag(const std::string& base, std::optional<std::int64_t> ell, std::optional<int> m) {
  std::string out = base;
  if (ell || m) {
    out += "[";
    if (ell) out += "ell=" + std::to_string(*ell);
    if (ell && m) out += ",";
    if (m) out += "m=" + std::to_string(*m);
    out += "]";
  }
  return out;
}

/// Largest argument any index of the family reaches on n <= hi.
std::int64_t argument_limit(const AffineIndex& index, std::int64_t hi) {
  return std::max<std::int64_t>(floor_div(index.a * hi + index.b, index.c), 0) + 1;
}

CoefficientStream statistic_stream(FormBuilder& builder, Statistic s, std::int64_t limit) {
  auto series = std::make_shared<QSeries>(builder.statistic(s, limit));
  return CoefficientStream{std::string(to_string(s)),
                           [series](std::int64_t k) { return series->coeff_q(k); }, limit};
}

/// M2spt read off the literal coefficients of S2, where q^{8k-1} carries (-1)^k M2spt(k).
CoefficientStream m2spt_from_s2(FormBuilder& builder, std::int64_t limit) {
  auto s2 = std::make_shared<QSeries>(builder.form(FormName::S2, 8 * limit));
  return CoefficientStream{"m2spt", [s2](std::int64_t k) {
                             const Rational c = s2->coeff_q(8 * k - 1);
                             return k % 2 == 0 ? c : Rational(-c);
                           },
                           limit};
}

using StreamMaker = std::function<CoefficientStream(FormBuilder&, std::int64_t)>;

Claim family_claim(std::string id, std::int64_t ell, int m, StreamMaker stream, AffineIndex index,
                   std::vector<FamilyTerm> comparison, std::optional<SideCondition> side, std::int64_t last_n,
                   std::vector<std::string> notes = {}) {
  Claim claim;
  claim.id = id;
  claim.ell = ell;
  claim.m = m;
  claim.range = IndexRange{0, last_n};
  claim.run = [=](FormBuilder& builder, IndexRange r) {
    CongruenceFamily family{id, stream(builder, argument_limit(index, r.hi)), index, comparison, side, ell, m};
    VerificationReport report = check_congruence_family(family, r);
    report.notes.insert(report.notes.end(), notes.begin(), notes.end());
    return report;
  };
  return claim;
}

StreamMaker stat_maker(Statistic s) {
  return [s](FormBuilder& b, std::int64_t limit) { return statistic_stream(b, s, limit); };
}

Claim hecke_claim(FormName form, std::int64_t ell, int m, std::int64_t n) {
  const std::int64_t big_l = checked_pow(ell, 2 * m);
  return Claim{tag(std::string(to_string(form)) + ".hecke-congruence", ell, m), ell, m, IndexRange{-big_l, n - 1},
               [=](FormBuilder& b, IndexRange r) { return check_hecke_congruence(b, form, ell, m, r); }};
}

Claim eigen_claim(FormName form, std::int64_t ell, std::int64_t n) {
  return Claim{tag(std::string(to_string(form)) + ".eigenform", ell, std::nullopt), ell, std::nullopt,
               IndexRange{-1, n - 1}, [=](FormBuilder& b, IndexRange r) {
                 return check_eigenform(b, form, ell, to_rational(ell + 1), r);
               }};
}

Claim identity_claim(IdentityId id, std::int64_t n) {
  return Claim{std::string(to_string(id)), std::nullopt, std::nullopt, IndexRange{-1, n - 1},
               [=](FormBuilder& b, IndexRange r) { return check_identity(b, id, r); }};
}

Claim ladder_claim(FormName form, std::int64_t ell, int m, std::int64_t hi) {
  const std::int64_t big_l = checked_pow(ell, 2 * m);
  return Claim{tag(std::string(to_string(form)) + ".ladder", ell, m), ell, m, IndexRange{-big_l, hi},
               [=](FormBuilder& b, IndexRange r) { return check_ladder(b, form, ell, m, r); }};
}

Claim sturm_claim(std::int64_t ell, int m, SturmFamily family) {
  const std::string base = family == SturmFamily::SPT ? "sturm.spt" : "sturm.overpartition";
  return Claim{tag(base, ell, m), ell, m, IndexRange{0, 0},
               [=](FormBuilder& b, IndexRange) { return sturm_certify(b, ell, m, family); }};
}

std::vector<Claim> spt_claims() {
  std::vector<Claim> out;
  const auto spt = stat_maker(Statistic::SPT);
  for (const auto& [ell, b] : {std::pair{5, 4}, {7, 5}, {13, 6}}) {
    const AffineIndex index{ell, b, 1};
    out.push_back(family_claim(tag("spt.classical", ell, 1), ell, 1, spt, index, {}, std::nullopt,
                               index.last_n_within(kClassicalArgumentBound)));
  }
  const std::vector<std::pair<std::int64_t, int>> vanishing = {{5, 1}, {7, 1}, {11, 1}, {13, 1}, {5, 2}};
  for (const auto& [ell, m] : vanishing) {
    const AffineIndex index{checked_pow(ell, 2 * m), 1, 24};
    out.push_back(family_claim(tag("spt.vanishing", ell, m), ell, m, spt, index, {}, SideCondition{ell, 1},
                               index.last_n_within(kSptArgumentBound)));
  }
  for (const std::int64_t ell : {5, 7, 11, 13}) {
    const AffineIndex index{ell * ell * ell, 1, 24};
    const std::int64_t sign = kronecker(3, ell);
    out.push_back(family_claim(tag("spt.odd-power-shift", ell, 1), ell, 1, spt, index,
                               {FamilyTerm{-sign, AffineIndex{ell, 1, 24}}}, std::nullopt,
                               index.last_n_within(kSptArgumentBound)));
  }
  // Explicit progressions spt(ell^3 n + (ell^2 d + 1)/24) with (-d/ell) = 1.
  for (const auto& [ell, d] : {std::pair<std::int64_t, std::int64_t>{11, 167}, {17, 239}, {19, 287}}) {
    const AffineIndex index{ell * ell * ell, (ell * ell * d + 1) / 24, 1};
    out.push_back(family_claim(tag("spt.explicit-progression", ell, 1), ell, 1, spt, index, {}, std::nullopt,
                               std::min<std::int64_t>(50, index.last_n_within(kSptArgumentBound))));
  }
  // spt(5^3 n + delta_{5,3}) + 5 spt(5 n + delta_{5,1}) = 0 mod 5^3.
  out.push_back(family_claim("spt.five-power-pair[ell=5,m=3]", 5, 3, spt, AffineIndex{125, delta(5, 3), 1},
                             {FamilyTerm{5, AffineIndex{5, delta(5, 1), 1}}}, std::nullopt, 300,
                             {"progression indices from delta(5,3) = 99 and delta(5,1) = 4"}));
  out.push_back(hecke_claim(FormName::MSTAR, 5, 1, 200));
  out.push_back(hecke_claim(FormName::MSTAR, 5, 2, 96));
  out.push_back(hecke_claim(FormName::MSTAR, 7, 1, 200));
  out.push_back(hecke_claim(FormName::MSTAR, 11, 1, 60));
  out.push_back(hecke_claim(FormName::MSTAR, 13, 1, 60));
  for (const std::int64_t ell : {5, 7, 11, 13}) {
    for (const int m : {1, 2}) out.push_back(ladder_claim(FormName::G_LM, ell, m, 22));
  }
  for (const std::int64_t ell : {5, 7}) {
    out.push_back(Claim{tag("mstar.extras", ell, 1), ell, 1, IndexRange{1, 2400},
                        [ell](FormBuilder& b, IndexRange r) { return check_mtilde_extras(b, ell, 1, r); }});
    out.push_back(Claim{tag("spt.closure", ell, 1), ell, 1, IndexRange{1, 2400},
                        [ell](FormBuilder& b, IndexRange r) { return check_consistency_closure(b, ell, 1, r); }});
  }
  out.push_back(identity_claim(IdentityId::SptDecomposition, 300));
  return out;
}

std::vector<Claim> overpartition_claims() {
  std::vector<Claim> out;
  const auto sbar = stat_maker(Statistic::SPTBAR1);
  for (const auto& [ell, m] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    const AffineIndex index{checked_pow(ell, 2 * m), 0, 1};
    out.push_back(family_claim(tag("sptbar1.vanishing", ell, m), ell, m, sbar, index, {}, SideCondition{ell, 1},
                               index.last_n_within(kOverpartitionArgumentBound)));
  }
  for (const std::int64_t ell : {3, 5}) {
    const AffineIndex index{ell * ell * ell, 0, 1};
    out.push_back(family_claim(tag("sptbar1.odd-power-shift", ell, 1), ell, 1, sbar, index,
                               {FamilyTerm{-1, AffineIndex{ell, 0, 1}}}, std::nullopt,
                               index.last_n_within(kOverpartitionArgumentBound)));
  }
  out.push_back(hecke_claim(FormName::GBAR, 3, 1, 200));
  out.push_back(hecke_claim(FormName::GBAR, 3, 2, 120));
  out.push_back(hecke_claim(FormName::GBAR, 5, 1, 100));
  out.push_back(hecke_claim(FormName::MBAR, 3, 1, 200));
  out.push_back(hecke_claim(FormName::MBAR, 3, 2, 60));
  out.push_back(hecke_claim(FormName::HBAR, 3, 1, 200));
  out.push_back(hecke_claim(FormName::HBAR, 5, 1, 100));
  for (const std::int64_t ell : {3, 5, 7}) out.push_back(eigen_claim(FormName::MBAR, ell, 200));
  out.push_back(identity_claim(IdentityId::FourMbarPlusFbar, 400));
  out.push_back(identity_claim(IdentityId::QuarterH, 300));
  for (const auto& [ell, m] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    out.push_back(ladder_claim(FormName::GBAR_LM, ell, m, 200));
  }
  return out;
}

std::vector<Claim> m2_claims() {
  std::vector<Claim> out;
  const StreamMaker m2spt = [](FormBuilder& b, std::int64_t limit) { return m2spt_from_s2(b, limit); };
  const std::string sign_note = "read from S2 coefficients with the (-1)^k sign removed";
  for (const auto& [ell, m] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    const AffineIndex index{checked_pow(ell, 2 * m), 1, 8};
    out.push_back(family_claim(tag("m2spt.vanishing", ell, m), ell, m, m2spt, index, {}, SideCondition{ell, 1},
                               index.last_n_within(kM2ArgumentBound), {sign_note}));
  }
  for (const std::int64_t ell : {3, 5}) {
    const AffineIndex index{ell * ell * ell, 1, 8};
    out.push_back(family_claim(tag("m2spt.odd-power-shift", ell, 1), ell, 1, m2spt, index,
                               {FamilyTerm{-kronecker(2, ell), AffineIndex{ell, 1, 8}}}, std::nullopt,
                               index.last_n_within(kM2ArgumentBound), {sign_note}));
  }
  out.push_back(hecke_claim(FormName::M2, 3, 1, 100));
  out.push_back(hecke_claim(FormName::M2, 3, 2, 60));
  out.push_back(hecke_claim(FormName::M2, 5, 1, 100));
  for (const std::int64_t ell : {3, 5, 7}) out.push_back(eigen_claim(FormName::M2, ell, 200));
  for (const std::int64_t ell : {3, 5, 7}) out.push_back(eigen_claim(FormName::ZAGIER_H, ell, 200));
  out.push_back(identity_claim(IdentityId::M2ClassNumbers, 2000));
  out.push_back(identity_claim(IdentityId::ClassNumberEta, 500));
  out.push_back(identity_claim(IdentityId::M2Decomposition, 300));
  return out;
}

std::vector<Claim> sturm_claims() {
  return {sturm_claim(5, 1, SturmFamily::SPT), sturm_claim(7, 1, SturmFamily::SPT),
          sturm_claim(3, 1, SturmFamily::OVERPARTITION), sturm_claim(3, 2, SturmFamily::OVERPARTITION),
          sturm_claim(5, 1, SturmFamily::OVERPARTITION)};
}

}  // namespace

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::PaperAll: return "paper-all";
    case Suite::Spt: return "spt";
    case Suite::Overpartition: return "overpartition";
    case Suite::M2: return "m2";
    case Suite::Sturm: return "sturm";
  }
  return "?";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::PaperAll, Suite::Spt, Suite::Overpartition, Suite::M2, Suite::Sturm}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Claim> suite_claims(Suite suite, const SuiteFilter& filter) {
  std::vector<Claim> all;
  auto append = [&](std::vector<Claim> more) {
    for (auto& c : more) all.push_back(std::move(c));
  };
  switch (suite) {
    case Suite::Spt: append(spt_claims()); break;
    case Suite::Overpartition: append(overpartition_claims()); break;
    case Suite::M2: append(m2_claims()); break;
    case Suite::Sturm: append(sturm_claims()); break;
    case Suite::PaperAll:
      append(spt_claims());
      append(overpartition_claims());
      append(m2_claims());
      append(sturm_claims());
      for (Statistic s : kAllStatistics) {
        all.push_back(Claim{"oracle." + std::string(to_string(s)), std::nullopt, std::nullopt, IndexRange{0, 40},
                            [s](FormBuilder& b, IndexRange r) { return check_oracle(b, s, r); }});
      }
      all.push_back(identity_claim(IdentityId::Trivial, 1));
      break;
  }
  std::vector<Claim> out;
  for (auto& c : all) {
    if (filter.ell && c.ell != filter.ell) continue;
    if (filter.m && c.m != filter.m) continue;
    if (filter.range) c.range = *filter.range;
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const Claim& a, const Claim& b) { return a.id < b.id; });
  return out;
}

}  // namespace smallparts

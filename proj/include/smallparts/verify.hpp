#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smallparts/forms.hpp"
#include "smallparts/generators.hpp"
#include "smallparts/qseries.hpp"

namespace smallparts {

enum class ClaimStatus { Verified, Counterexample, Skipped };
std::string_view to_string(ClaimStatus s);

/// Inclusive range of the variable a check iterates over (the family
/// parameter n, or a q-exponent for series checks).
struct IndexRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct FirstFailure {
  std::int64_t n = 0;
  std::string detail;
  /// Residue of the failing combination modulo ell^m, or the mismatching value.
  std::string residue;
};

struct VerificationReport {
  std::string claim;
  std::optional<std::int64_t> ell;
  std::optional<int> m;
  std::optional<IndexRange> range;
  ClaimStatus status = ClaimStatus::Verified;
  std::int64_t checked = 0;
  std::optional<FirstFailure> first_failure;
  std::optional<std::int64_t> margin;
  std::vector<std::string> notes;
  /// Seconds; reported only inside the metadata block.
  double wall_time = 0.0;

  bool failed() const { return status == ClaimStatus::Counterexample; }
};

/// JSON array of reports. With include_metadata false the output is a pure
/// function of the claims and their results (no timings).
std::string reports_to_json(const std::vector<VerificationReport>& reports, bool include_metadata = true);

/// x mod ell^m in [0, ell^m); throws DenominatorDivisibleByEll.
Integer residue_mod(const Rational& x, std::int64_t ell, int m);

/// n -> (a n + b) / c, defined when c divides a n + b and the result is >= 0.
struct AffineIndex {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 1;
  std::optional<std::int64_t> operator()(std::int64_t n) const;
  /// Largest n whose image does not exceed `argument_bound`.
  std::int64_t last_n_within(std::int64_t argument_bound) const;
};

/// Coefficients of a statistic or form, readable at arguments 0 .. limit-1.
struct CoefficientStream {
  std::string name;
  std::function<Rational(std::int64_t)> at;
  std::int64_t limit = 0;
};

struct SideCondition {
  std::int64_t ell;
  /// Required value of the Kronecker symbol (-n/ell).
  int value;
};

/// coefficient * stream(index(n)).
struct FamilyTerm {
  std::int64_t coefficient;
  AffineIndex index;
};

/// Claims stream(index_map(n)) + sum_i c_i stream(index_i(n)) = 0 mod ell^m for
/// every n where all indices are defined and the side condition holds.
struct CongruenceFamily {
  std::string claim;
  CoefficientStream source;
  AffineIndex index_map;
  std::vector<FamilyTerm> comparison;
  std::optional<SideCondition> side_condition;
  std::int64_t ell = 5;
  int m = 1;
};

VerificationReport check_congruence_family(const CongruenceFamily& family, IndexRange n_range);

/// Every coefficient of F0|T(ell^{2m}) - chi(ell) F0|T(ell^{2m-2}) with q-exponent
/// in `exponents` vanishes mod ell^m. F0 = MSTAR uses chi = (12/.), other forms
/// the trivial character.
VerificationReport check_hecke_congruence(FormBuilder& builder, FormName form, std::int64_t ell, int m,
                                          IndexRange exponents);

/// F|T(ell^2) = eigenvalue * F exactly on `exponents`.
VerificationReport check_eigenform(FormBuilder& builder, FormName form, std::int64_t ell, const Rational& eigenvalue,
                                   IndexRange exponents);

enum class IdentityId {
  FourMbarPlusFbar,    // 4 Mbar + fbar = 0
  M2ClassNumbers,      // M2 = sum H(8n-1) q^{8n-1}
  ClassNumberEta,      // sum_{n = 3 (8)} 3 H(n) q^n = eta^6(16 tau) / eta^3(8 tau)
  SptDecomposition,    // M - S = (1/12) sum (24n-1) p(n) q^{24n-1}
  QuarterH,            // Mbar - Sbar = 2 q d/dq Pbar - hbar / 4
  M2Decomposition,     // M2 - S2 = (gbar + q d/dq R) / 16
  Trivial,             // 0 = 0 on an empty stream
};
std::string_view to_string(IdentityId id);

/// Exact equality of both sides for q-exponents in `exponents`.
VerificationReport check_identity(FormBuilder& builder, IdentityId id, IndexRange exponents);

enum class SturmFamily { SPT, OVERPARTITION };

/// Builds H_{ell,m} (or Hbar_{ell,m}), confirms the Sturm-bound prefix and the
/// claimed vanishing order mod ell^m, and records the margin. Throws
/// GuardExceeded when ell^{2m} > 700.
VerificationReport sturm_certify(FormBuilder& builder, std::int64_t ell, int m, SturmFamily family);

/// On M* coefficients: the alternating combination on the (-n/ell) = -1 stratum
/// and m(ell^{2m+1} n) - (3/ell) m(ell^{2m-1} n), both mod ell^m. The same
/// alternating combination on S is evaluated and only recorded.
VerificationReport check_mtilde_extras(FormBuilder& builder, std::int64_t ell, int m, IndexRange exponents);

/// Recovers spt vanishing from the Hecke combination and the closed form:
/// on (-n/ell) = 1, n = 23 mod 24, the computed F_m coefficient equals the
/// closed form, vanishes mod ell^m, and matches spt((ell^{2m} n + 1)/24) mod ell^m.
VerificationReport check_consistency_closure(FormBuilder& builder, std::int64_t ell, int m, IndexRange exponents);

/// Principal-part shape of G_{ell,m} below q^23, or Gbar_{ell,m} = ell^m q^{-ell^{2m}} + O(q^7)
/// with support on 7 mod 8 below q^{exponents.hi + 1}.
VerificationReport check_ladder(FormBuilder& builder, FormName form, std::int64_t ell, int m, IndexRange exponents);

/// Generating-function coefficients against exhaustive enumeration on n_range.
VerificationReport check_oracle(FormBuilder& builder, Statistic s, IndexRange n_range);

/// A named, re-runnable check.
struct Claim {
  std::string id;
  std::optional<std::int64_t> ell;
  std::optional<int> m;
  IndexRange range;
  std::function<VerificationReport(FormBuilder&, IndexRange)> run;
};

/// Runs a claim, timing it and turning library errors into failed reports
/// (GuardExceeded becomes Skipped).
VerificationReport run_claim(const Claim& claim, FormBuilder& builder, std::optional<IndexRange> range = std::nullopt);

/// Re-runs a claim on the single index recorded in a counterexample.
VerificationReport replay(const Claim& claim, const VerificationReport& report, FormBuilder& builder);

/// Runs claims on up to `jobs` threads; reports come back sorted by claim id.
std::vector<VerificationReport> run_claims(const std::vector<Claim>& claims, FormBuilder& builder, int jobs = 1);

enum class Suite { PaperAll, Spt, Overpartition, M2, Sturm };
std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

struct SuiteFilter {
  std::optional<std::int64_t> ell;
  std::optional<int> m;
  /// Replaces each claim's default range.
  std::optional<IndexRange> range;
};

/// Claims of a suite in claim-id order, filtered by (ell, m).
std::vector<Claim> suite_claims(Suite suite, const SuiteFilter& filter = {});

}  // namespace smallparts

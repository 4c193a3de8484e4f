#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smallparts/generators.hpp"
#include "smallparts/qseries.hpp"

namespace smallparts {

/// prod eta(delta * tau)^r. The leading index (in 1/24 units) is sum delta * r.
struct EtaQuotientSpec {
  struct Factor {
    std::int64_t delta;
    std::int64_t exponent;
  };
  std::vector<Factor> factors;

  std::int64_t leading_index() const;
};

/// Expansion of an eta quotient, exact for q-exponents below n.
QSeries eta_quotient(const EtaQuotientSpec& spec, std::int64_t n);
/// 1 - 24 sum sigma1(k) q^k.
QSeries eisenstein_E2(std::int64_t n);
/// sum over all integers k of q^{k^2}.
QSeries theta(std::int64_t n);

enum class FormName {
  S, M, MSTAR, PBAR, SBAR, MBAR, FBAR, E, HBAR, GBAR, R, S2, M2, ZAGIER_H,
  G_LM, F_LM, H_LM, GBAR_LM, FBAR_LM, HBAR_LM
};

inline constexpr FormName kAllForms[] = {
    FormName::S,    FormName::M,     FormName::MSTAR, FormName::PBAR,     FormName::SBAR,
    FormName::MBAR, FormName::FBAR,  FormName::E,     FormName::HBAR,     FormName::GBAR,
    FormName::R,    FormName::S2,    FormName::M2,    FormName::ZAGIER_H, FormName::G_LM,
    FormName::F_LM, FormName::H_LM,  FormName::GBAR_LM, FormName::FBAR_LM, FormName::HBAR_LM};

/// Lower-case CLI spelling, e.g. "mstar", "gbar_lm".
std::string_view to_string(FormName f);
std::optional<FormName> parse_form_name(std::string_view name);
/// Whether the form is indexed by (ell, m).
bool takes_params(FormName f);

struct FormParams {
  std::int64_t ell;
  int m;
  friend bool operator==(const FormParams&, const FormParams&) = default;
};

struct NamedForm {
  FormName name;
  std::optional<FormParams> params;
  QSeries series;
};

struct BuilderOptions {
  /// Directory holding JSON copies of built series; reused across runs.
  std::optional<std::filesystem::path> cache_dir;
  /// Re-evaluate each definition a second way on a prefix of every fresh build.
  bool self_check = true;
  /// Largest Hecke source q-precision the builder will attempt; 0 means no limit.
  std::int64_t max_source_precision = 0;
  std::int64_t oracle_ceiling = 60;
};

/// Builds named forms, memoizing every intermediate series. Safe to share
/// across threads: concurrent requests may compute the same series twice but
/// always observe identical values.
class FormBuilder {
 public:
  explicit FormBuilder(BuilderOptions options = {});

  /// Form exact for q-exponents below n.
  NamedForm build(FormName name, std::optional<FormParams> params, std::int64_t n);
  QSeries form(FormName name, std::int64_t n) { return build(name, std::nullopt, n).series; }
  QSeries form(FormName name, FormParams params, std::int64_t n) { return build(name, params, n).series; }
  /// Partition statistic generating function, exact for q^0 .. q^{n-1}.
  QSeries statistic(Statistic s, std::int64_t n);

  /// Source q-precision a build of `name` to q-precision n consumes before a
  /// Hecke operator is applied (n itself for forms without one).
  static std::int64_t required_source_precision(FormName name, std::optional<FormParams> params, std::int64_t n);

  const BuilderOptions& options() const { return options_; }

 private:
  template <class Make>
  QSeries cached(const std::string& key, std::int64_t n, Make&& make);
  QSeries make(FormName name, const std::optional<FormParams>& params, std::int64_t n);
  void self_check(FormName name, const std::optional<FormParams>& params, const QSeries& built);

  BuilderOptions options_;
  std::mutex mutex_;
  std::map<std::string, QSeries> memo_;
};

/// One-shot build with a private builder.
NamedForm build(FormName name, std::optional<FormParams> params, std::int64_t n);

/// The M - S decompositions: for SPT, M - S = (1/12) q d/dq (sum p(k) q^{24k-1});
/// for SPTBAR1, Mbar - Sbar = 2 q d/dq Pbar - hbar/4; for M2SPT,
/// M2 - S2 = (gbar + q d/dq R)/16. Returns (M-form, S-form) and throws
/// DecompositionMismatch (index of the first bad term) if the identity fails.
std::pair<QSeries, QSeries> m_minus_s_decomposition(FormBuilder& builder, Statistic which, std::int64_t n);

}  // namespace smallparts

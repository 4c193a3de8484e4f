#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "smallparts/forms.hpp"
#include "smallparts/generators.hpp"
#include "smallparts/hecke.hpp"
#include "smallparts/run_config.hpp"
#include "smallparts/verify.hpp"

using namespace smallparts;

namespace {

std::string series_csv(const QSeries& s) {
  std::string out = "exponent,coefficient\n";
  for (const auto& t : s.terms()) {
    out += make_rational(to_integer(t.index), to_integer(QSeries::kUnit)).get_str();
    out += ",";
    out += t.coeff.get_num().get_str() + "/" + t.coeff.get_den().get_str();
    out += "\n";
  }
  return out;
}

std::string reports_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "claim,status,checked,first_failure_n,residue\n";
  for (const auto& r : reports) {
    out += "\"" + r.claim + "\"," + std::string(to_string(r.status)) + "," + std::to_string(r.checked) + ",";
    if (r.first_failure) out += std::to_string(r.first_failure->n) + "," + r.first_failure->residue;
    else out += ",";
    out += "\n";
  }
  return out;
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path || *path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(*path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + *path);
  out << text;
}

BuilderOptions builder_options(const RunConfig& config) {
  BuilderOptions options;
  options.oracle_ceiling = config.oracle_ceiling;
  if (config.cache_dir) options.cache_dir = *config.cache_dir;
  if (const char* dir = std::getenv("SMALLPARTS_CACHE_DIR"); dir != nullptr && *dir != '\0') options.cache_dir = dir;
  return options;
}

std::int64_t precision_for(const RunConfig& config, const std::string& name, std::optional<std::int64_t> flag,
                           std::int64_t fallback) {
  if (flag) return *flag;
  if (auto it = config.precision.find(name); it != config.precision.end()) return it->second;
  return fallback;
}

std::string render(const QSeries& s, const std::string& format) {
  return format == "csv" ? series_csv(s) : to_json(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-series, Hecke operators and congruence checks for smallest-parts functions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> out;
  std::string format;
  app.add_option("--config", config_path, "key = value run configuration file");
  app.add_option("--out", out, "output file (default stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* series_cmd = app.add_subcommand("series", "generating function of a statistic, or an unparameterized form");
  std::string series_name;
  std::optional<std::int64_t> series_prec;
  series_cmd->add_option("name", series_name, "p, pbar, spt, sptbar1, m2spt, podd, or a form name")->required();
  series_cmd->add_option("--prec", series_prec, "q-precision N: coefficients of q^k for k < N");

  auto* form_cmd = app.add_subcommand("form", "a named modular or mock modular form");
  std::string form_name;
  std::optional<std::int64_t> form_prec;
  std::optional<std::int64_t> form_ell;
  std::optional<int> form_m;
  form_cmd->add_option("name", form_name, "form name, e.g. mstar, gbar, g_lm")->required();
  form_cmd->add_option("--prec", form_prec, "q-precision");
  form_cmd->add_option("--ell", form_ell, "prime for the (ell, m) families");
  form_cmd->add_option("--m", form_m, "power for the (ell, m) families");

  auto* hecke_cmd = app.add_subcommand("hecke", "apply T(ell^{2m}) to a form");
  std::string hecke_form;
  std::int64_t hecke_ell = 5;
  int hecke_m = 1;
  std::optional<std::int64_t> hecke_char;
  std::optional<std::int64_t> hecke_prec;
  hecke_cmd->add_option("--form", hecke_form, "source form")->required();
  hecke_cmd->add_option("--ell", hecke_ell, "odd prime")->required();
  hecke_cmd->add_option("--m", hecke_m, "power m in T(ell^{2m})");
  hecke_cmd->add_option("--char", hecke_char, "character discriminant D for (D/.); default 12 for mstar, else 1");
  hecke_cmd->add_option("--prec", hecke_prec, "output q-precision");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::optional<std::string> suite_name;
  std::optional<std::int64_t> verify_ell;
  std::optional<int> verify_m;
  std::optional<std::string> verify_range;
  std::optional<int> verify_jobs;
  bool no_metadata = false;
  verify_cmd->add_option("--suite", suite_name, "paper-all, spt, overpartition, m2 or sturm");
  verify_cmd->add_option("--ell", verify_ell, "keep claims at this prime");
  verify_cmd->add_option("--m", verify_m, "keep claims at this power");
  verify_cmd->add_option("--range", verify_range, "lo:hi replacing every claim's default range");
  verify_cmd->add_option("--jobs", verify_jobs, "worker threads");
  verify_cmd->add_flag("--no-metadata", no_metadata, "omit wall-clock timings from the report");

  auto* oracle_cmd = app.add_subcommand("oracle", "count by exhaustive enumeration");
  std::string oracle_name;
  std::int64_t oracle_n = 0;
  oracle_cmd->add_option("name", oracle_name, "statistic name")->required();
  oracle_cmd->add_option("n", oracle_n, "argument")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (out) config.out = *out;
    if (!format.empty()) config.format = format;
    FormBuilder builder(builder_options(config));

    if (series_cmd->parsed()) {
      const std::int64_t n = precision_for(config, series_name, series_prec, 100);
      if (const auto s = parse_statistic(series_name)) {
        emit(render(builder.statistic(*s, n), config.format), config.out);
      } else if (const auto f = parse_form_name(series_name); f && !takes_params(*f)) {
        emit(render(builder.form(*f, n), config.format), config.out);
      } else {
        std::cerr << "unknown series '" << series_name << "'\n";
        return 2;
      }
      return 0;
    }
    if (form_cmd->parsed()) {
      const auto f = parse_form_name(form_name);
      if (!f) {
        std::cerr << "unknown form '" << form_name << "'\n";
        return 2;
      }
      std::optional<FormParams> params;
      if (form_ell || form_m) params = FormParams{form_ell.value_or(5), form_m.value_or(1)};
      const std::int64_t n = precision_for(config, form_name, form_prec, 100);
      emit(render(builder.build(*f, params, n).series, config.format), config.out);
      return 0;
    }
    if (hecke_cmd->parsed()) {
      const auto f = parse_form_name(hecke_form);
      if (!f || takes_params(*f)) {
        std::cerr << "hecke needs an unparameterized form, got '" << hecke_form << "'\n";
        return 2;
      }
      const Character chi{hecke_char.value_or(*f == FormName::MSTAR || *f == FormName::M || *f == FormName::S ? 12 : 1)};
      HeckeSpec{hecke_ell, hecke_m, chi}.validate();
      const std::int64_t n = precision_for(config, hecke_form, hecke_prec, 50);
      HeckeTriple triple(builder.form(*f, checked_pow(hecke_ell, 2 * hecke_m) * n), hecke_ell, chi);
      emit(render(apply_T_power(triple, hecke_m, n), config.format), config.out);
      return 0;
    }
    if (verify_cmd->parsed()) {
      if (suite_name) config.suite = *suite_name;
      if (verify_ell) config.ell = verify_ell;
      if (verify_m) config.m = verify_m;
      if (verify_range) config.range = parse_range(*verify_range);
      if (verify_jobs) config.jobs = *verify_jobs;
      const auto suite = parse_suite(config.suite);
      if (!suite) {
        std::cerr << "unknown suite '" << config.suite << "'\n";
        return 2;
      }
      const auto claims = suite_claims(*suite, SuiteFilter{config.ell, config.m, config.range});
      const auto reports = run_claims(claims, builder, config.jobs);
      emit(config.format == "csv" ? reports_csv(reports) : reports_to_json(reports, !no_metadata), config.out);
      bool all_ok = true;
      for (const auto& r : reports) {
        if (r.status == ClaimStatus::Counterexample) {
          all_ok = false;
          std::cerr << "FAILED " << r.claim << ": " << (r.first_failure ? r.first_failure->detail : "") << "\n";
        }
      }
      return all_ok ? 0 : 1;
    }
    if (oracle_cmd->parsed()) {
      const auto s = parse_statistic(oracle_name);
      if (!s) {
        std::cerr << "unknown statistic '" << oracle_name << "'\n";
        return 2;
      }
      std::cout << enumerate_oracle(*s, oracle_n, std::max(config.oracle_ceiling, oracle_n)).get_str() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what();
    if (e.kind() == ErrorKind::InsufficientPrecision) std::cerr << " [required " << e.index() << "]";
    std::cerr << "\n";
    return 2;
  }
  return 0;
}

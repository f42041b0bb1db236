#pragma once

// Experiment sweeps over blocklengths, report records and serialization.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tss/probcore.hpp"
#include "tss/typicality.hpp"

namespace tss {

struct SchemeSpec {
  enum class Kind { kBlockwise, kSymbolwise };
  Kind kind = Kind::kBlockwise;
  double ell = 0.0;         // blockwise
  std::size_t modulus = 0;  // symbolwise
};

enum class Mode { kExact, kMonteCarlo };

struct ExperimentConfig {
  Pmf source = Pmf::uniform(2);
  SchemeSpec scheme;
  GammaSchedule schedule = GammaSchedule::default_schedule();
  std::vector<std::size_t> n_values;
  Mode mode = Mode::kExact;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // 0 = all cores; results do not depend on it

  // Throws ConfigError.
  void validate() const;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

enum class Verdict { kHolds, kViolated, kNotApplicable };
std::string_view verdict_name(Verdict v);
Verdict parse_verdict(std::string_view s);

struct ExperimentRecord {
  std::size_t n = 0;
  double gamma_n = 0.0;
  double rate_x = 0.0;
  double rate_y = 0.0;
  double rate_u = 0.0;
  double p_e = 0.0;
  double p_x = 0.0;
  double p_y = 0.0;
  double i_sx = 0.0;  // I(S^n; X), bits per block
  double i_sy = 0.0;
  double i_xy_per_symbol = 0.0;
  double exp_x = 0.0;
  double exp_y = 0.0;
  Verdict v_rate = Verdict::kNotApplicable;
  Verdict v_exp = Verdict::kNotApplicable;
  Verdict v_logsum = Verdict::kNotApplicable;
  Verdict v_fano = Verdict::kNotApplicable;
  Verdict v_sandwich = Verdict::kNotApplicable;

  // JSONL only.
  double alpha = 0.0;
  double beta = 0.0;
  double h_s_given_xy = 0.0;  // bits per block
  double delta = 0.0;         // atypical mass (blockwise)
  std::uint64_t l_n = 0;
  std::uint64_t m_n = 0;
  double p_e_ci_low = 0.0, p_e_ci_high = 0.0;
  double p_x_ci_low = 0.0, p_x_ci_high = 0.0;
  double p_y_ci_low = 0.0, p_y_ci_high = 0.0;
  double beta_ci_low = 0.0, beta_ci_high = 0.0;
  std::string skipped_reason;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRecord> records;
  std::string version;
  double wall_time_s = 0.0;
};

ExperimentRecord evaluate_n(const ExperimentConfig& cfg, std::size_t n);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

bool any_violated(const ExperimentReport& r);

enum class ReportFormat { kCsv, kJsonLines };

inline constexpr std::string_view kCsvHeader =
    "n,gamma_n,rate_x,rate_y,rate_u,p_e,p_x,p_y,i_sx,i_sy,i_xy_per_symbol,exp_x,exp_y,"
    "v_rate,v_exp,v_logsum,v_fano,v_sandwich";

// %.12g; non-finite values as inf, -inf, nan.
std::string format_real(double v);

void emit_report(const ExperimentReport& report, ReportFormat format, std::ostream& out);
ExperimentReport read_jsonl(std::istream& in);

std::string library_version();

}  // namespace tss

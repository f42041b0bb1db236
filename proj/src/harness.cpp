#include "tss/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "tss/adversary.hpp"
#include "tss/blockwise.hpp"
#include "tss/errors.hpp"
#include "tss/symbolwise.hpp"

#ifndef TSS_VERSION
#define TSS_VERSION "0.0.0"
#endif

namespace tss {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}

template <class T>
T get_number(const json& j, const char* key, const char* where) {
  const auto& v = j.at(key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
  } else {
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0 &&
                                   !v.is_number_unsigned())) {
      throw ConfigError(std::string(where) + "." + key + " must be a non-negative integer");
    }
  }
  return v.get<T>();
}

}  // namespace

// ---- config ----

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw ConfigError("n_values must be non-empty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] == 0) throw ConfigError("n_values entries must be >= 1");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw ConfigError("n_values must be strictly increasing");
    }
  }
  if (trials == 0) throw ConfigError("trials must be >= 1");
  if (scheme.kind == SchemeSpec::Kind::kBlockwise) {
    if (!(scheme.ell >= 0.0) || !std::isfinite(scheme.ell)) throw ConfigError("ell must be >= 0");
  } else {
    if (scheme.modulus < source.support_size()) {
      throw ConfigError("symbolwise modulus M must be at least the source alphabet size");
    }
    if (scheme.modulus > 4096) throw ConfigError("symbolwise modulus M is limited to 4096");
  }
  if (schedule.kind == GammaSchedule::Kind::kPowerLaw &&
      !(schedule.parameter > 0.0 && schedule.parameter < 0.5)) {
    throw ConfigError("power_law exponent must be in (0, 0.5)");
  }
  if (schedule.kind == GammaSchedule::Kind::kConstant && !(schedule.parameter > 0.0)) {
    throw ConfigError("constant gamma must be positive");
  }
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(j, {"source", "scheme", "schedule", "n_values", "mode", "trials", "seed", "threads"},
                      "config");
  ExperimentConfig c;
  try {
    if (!j.contains("source")) throw ConfigError("config.source is required");
    const auto& src = j.at("source");
    if (src.is_string()) {
      c.source = Pmf::parse(src.get<std::string>());
    } else {
      c.source = Pmf::parse(src.dump());
    }

    if (!j.contains("scheme")) throw ConfigError("config.scheme is required");
    const auto& s = j.at("scheme");
    if (!s.is_object() || !s.contains("kind")) throw ConfigError("scheme.kind is required");
    const auto kind = s.at("kind").get<std::string>();
    if (kind == "blockwise") {
      reject_unknown_keys(s, {"kind", "ell"}, "scheme");
      c.scheme.kind = SchemeSpec::Kind::kBlockwise;
      c.scheme.ell = get_number<double>(s, "ell", "scheme");
    } else if (kind == "symbolwise") {
      reject_unknown_keys(s, {"kind", "M"}, "scheme");
      c.scheme.kind = SchemeSpec::Kind::kSymbolwise;
      c.scheme.modulus = get_number<std::size_t>(s, "M", "scheme");
    } else {
      throw ConfigError("scheme.kind must be 'blockwise' or 'symbolwise'");
    }

    if (j.contains("schedule")) {
      const auto& g = j.at("schedule");
      if (!g.is_object() || !g.contains("kind")) throw ConfigError("schedule.kind is required");
      const auto gk = g.at("kind").get<std::string>();
      if (gk == "power_law") {
        reject_unknown_keys(g, {"kind", "a"}, "schedule");
        c.schedule = {GammaSchedule::Kind::kPowerLaw,
                      g.contains("a") ? get_number<double>(g, "a", "schedule") : 1.0 / 3.0};
      } else if (gk == "constant") {
        reject_unknown_keys(g, {"kind", "gamma"}, "schedule");
        c.schedule = {GammaSchedule::Kind::kConstant, get_number<double>(g, "gamma", "schedule")};
      } else {
        throw ConfigError("schedule.kind must be 'power_law' or 'constant'");
      }
    }

    if (!j.contains("n_values") || !j.at("n_values").is_array()) {
      throw ConfigError("config.n_values must be an array");
    }
    for (const auto& v : j.at("n_values")) {
      if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw ConfigError("n_values entries must be positive integers");
      }
      c.n_values.push_back(v.get<std::size_t>());
    }

    if (j.contains("mode")) {
      const auto m = j.at("mode").get<std::string>();
      if (m == "exact") {
        c.mode = Mode::kExact;
      } else if (m == "mc" || m == "monte_carlo") {
        c.mode = Mode::kMonteCarlo;
      } else {
        throw ConfigError("mode must be 'exact' or 'mc'");
      }
    }
    if (j.contains("trials")) c.trials = get_number<std::uint64_t>(j, "trials", "config");
    if (j.contains("seed")) c.seed = get_number<std::uint64_t>(j, "seed", "config");
    if (j.contains("threads")) c.threads = get_number<unsigned>(j, "threads", "config");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  json j;
  j["source"] = std::vector<double>(source.probs().begin(), source.probs().end());
  if (scheme.kind == SchemeSpec::Kind::kBlockwise) {
    j["scheme"] = {{"kind", "blockwise"}, {"ell", scheme.ell}};
  } else {
    j["scheme"] = {{"kind", "symbolwise"}, {"M", scheme.modulus}};
  }
  if (schedule.kind == GammaSchedule::Kind::kPowerLaw) {
    j["schedule"] = {{"kind", "power_law"}, {"a", schedule.parameter}};
  } else {
    j["schedule"] = {{"kind", "constant"}, {"gamma", schedule.parameter}};
  }
  j["n_values"] = n_values;
  j["mode"] = mode == Mode::kExact ? "exact" : "mc";
  j["trials"] = trials;
  j["seed"] = seed;
  // threads is left out: it cannot change any result, and reports from runs
  // that differ only in it should be byte-identical.
  return j;
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return ExperimentConfig::from_json(j);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kViolated:
      return "violated";
    case Verdict::kNotApplicable:
      break;
  }
  return "not_applicable";
}

Verdict parse_verdict(std::string_view s) {
  if (s == "holds") return Verdict::kHolds;
  if (s == "violated") return Verdict::kViolated;
  if (s == "not_applicable") return Verdict::kNotApplicable;
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

std::string library_version() { return TSS_VERSION; }

// ---- evaluation ----

namespace {

// Miss probability of the interval behind each Monte Carlo verdict. The
// reported 95% intervals would flag a true bound as violated about once in
// twenty comparisons, so verdicts use a much wider exact interval.
constexpr double kVerdictMissProbability = 1e-6;

// A probability with the interval used for verdicts (lo, hi) and the one that
// is reported (ci_lo, ci_hi). Exact values have degenerate intervals; each
// check takes the endpoint least favourable to a violation.
struct Estimate {
  double value = kNaN;
  double lo = kNaN;
  double hi = kNaN;
  double ci_lo = kNaN;
  double ci_hi = kNaN;

  static Estimate exact(double v) { return {v, v, v, v, v}; }
  static Estimate from(const McEstimate& e) {
    const auto wide = clopper_pearson(e.successes, e.trials, kVerdictMissProbability);
    return {e.estimate, wide.low, wide.high, e.ci_low, e.ci_high};
  }
};

struct Information {
  bool available = false;
  double i_xy = kNaN;  // per block
  double i_sx = kNaN;
  double i_sy = kNaN;
  double h_s = kNaN;
  double h_x = kNaN;
  double h_y = kNaN;
  double h_s_given_xy = kNaN;
};

struct Probabilities {
  Estimate p_e, alpha, beta, p_x, p_y;
};

double exponent(double p, std::size_t n) {
  if (std::isnan(p)) return kNaN;
  return p > 0.0 ? -std::log2(p) / static_cast<double>(n) : kInf;
}

Verdict all_of(std::initializer_list<bool> checks) {
  for (bool c : checks) {
    if (!c) return Verdict::kViolated;
  }
  return Verdict::kHolds;
}

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::kViolated || b == Verdict::kViolated) return Verdict::kViolated;
  if (a == Verdict::kNotApplicable) return b;
  return a;
}

constexpr double kProbTolerance = 1e-12;

// Verdicts shared by both schemes. direct_bound is the scheme's own upper
// bound on the attack success probability.
void common_verdicts(ExperimentRecord& r, const Information& info, const Probabilities& pr,
                     double direct_bound, std::size_t alphabet) {
  const std::size_t n = r.n;
  Verdict exp_v = all_of({pr.p_x.lo <= direct_bound + kProbTolerance,
                          pr.p_y.lo <= direct_bound + kProbTolerance,
                          pr.beta.lo <= std::min(pr.p_x.hi, pr.p_y.hi) + kProbTolerance});
  if (info.available) {
    const BoundCheck conv = converse_exponent_check(info.i_xy, pr.alpha.hi, pr.p_x.hi, pr.p_y.hi, n);
    exp_v = worst(exp_v, all_of({conv.holds}));

    bool logsum = false;
    for (double a : {pr.alpha.lo, pr.alpha.hi}) {
      logsum = logsum || logsum_bound_check(info.i_xy, {a, pr.beta.hi}).holds;
    }
    r.v_logsum = all_of({logsum});

    bool fano = false;
    for (double pe : {pr.p_e.lo, pr.p_e.hi}) {
      fano = fano || fano_check(pe, info.h_s_given_xy, n, alphabet).holds;
    }
    r.v_fano = all_of({fano});
  }
  r.v_exp = exp_v;
}

// Finite-blocklength converse chain on the share and randomness sizes:
//   log|X| >= I(X;Y) + H(S^n|Y) - H(S^n|X,Y), likewise for Y, and
//   log|U| >= H(X) + H(Y) - I(X;Y) - H(S^n) + H(S^n|X,Y).
bool converse_rates_hold(const ExperimentRecord& r, const Information& info) {
  const double n = static_cast<double>(r.n);
  const double tol = kBoundTolerance;
  return r.rate_x >= (info.i_xy + info.h_s - info.i_sy - info.h_s_given_xy) / n - tol &&
         r.rate_y >= (info.i_xy + info.h_s - info.i_sx - info.h_s_given_xy) / n - tol &&
         r.rate_u >= (info.h_x + info.h_y - info.i_xy - info.h_s + info.h_s_given_xy) / n - tol;
}

void fill_probabilities(ExperimentRecord& r, const Probabilities& pr) {
  r.p_e = pr.p_e.value;
  r.alpha = pr.alpha.value;
  r.beta = pr.beta.value;
  r.p_x = pr.p_x.value;
  r.p_y = pr.p_y.value;
  r.exp_x = exponent(r.p_x, r.n);
  r.exp_y = exponent(r.p_y, r.n);
  r.p_e_ci_low = pr.p_e.ci_lo;
  r.p_e_ci_high = pr.p_e.ci_hi;
  r.p_x_ci_low = pr.p_x.ci_lo;
  r.p_x_ci_high = pr.p_x.ci_hi;
  r.p_y_ci_low = pr.p_y.ci_lo;
  r.p_y_ci_high = pr.p_y.ci_hi;
  r.beta_ci_low = pr.beta.ci_lo;
  r.beta_ci_high = pr.beta.ci_hi;
}

ExperimentRecord evaluate_blockwise(const ExperimentConfig& cfg, std::size_t n, double gamma,
                                    const RandomStream& rng) {
  ExperimentRecord r;
  r.n = n;
  r.gamma_n = gamma;
  const BlockwiseParams params = BlockwiseParams::make(cfg.source, n, cfg.scheme.ell, gamma);
  r.l_n = params.l();
  r.m_n = params.m();
  r.delta = atypical_mass(cfg.source, n, gamma);
  const double nn = static_cast<double>(n);
  r.rate_x = r.rate_y = r.rate_u = std::log2(static_cast<double>(params.share_alphabet())) / nn;

  std::optional<BlockwiseQuantities> q;
  try {
    q = exact_quantities(params);
  } catch (const CapExceeded&) {
    if (cfg.mode == Mode::kExact) throw;
  }

  Information info;
  Probabilities pr;
  if (q) {
    info = {true, q->i_xy, q->i_sx, q->i_sy, q->h_s, q->h_x, q->h_y, q->h_s_given_xy};
  }
  if (cfg.mode == Mode::kExact) {
    const BlockwiseAttack attack(params, q->laws);
    pr.p_e = Estimate::exact(q->p_e);
    pr.alpha = Estimate::exact(q->alpha);
    pr.beta = Estimate::exact(attack.beta());
    pr.p_x = Estimate::exact(attack.optimal(Direction::kForgeX).success_prob);
    pr.p_y = Estimate::exact(attack.optimal(Direction::kForgeY).success_prob);
  } else {
    const Pmf uniform = Pmf::uniform(params.share_alphabet());
    const auto rejected = monte_carlo_estimate(blockwise_rejection_trials(params), cfg.trials,
                                               rng.split(0), cfg.threads);
    pr.p_e = pr.alpha = Estimate::from(rejected);
    pr.p_x = Estimate::from(monte_carlo_estimate(
        blockwise_attack_trials(params, Direction::kForgeX, uniform), cfg.trials, rng.split(1),
        cfg.threads));
    pr.p_y = Estimate::from(monte_carlo_estimate(
        blockwise_attack_trials(params, Direction::kForgeY, uniform), cfg.trials, rng.split(2),
        cfg.threads));
    pr.beta = Estimate::from(monte_carlo_estimate(blockwise_product_trials(params), cfg.trials,
                                                  rng.split(3), cfg.threads));
  }
  fill_probabilities(r, pr);

  const double h_src = entropy(cfg.source);
  const bool rate_upper = r.rate_x <= h_src + cfg.scheme.ell + gamma + 1.0 / nn + kBoundTolerance;
  if (info.available) {
    r.i_sx = info.i_sx;
    r.i_sy = info.i_sy;
    r.i_xy_per_symbol = info.i_xy / nn;
    r.h_s_given_xy = info.h_s_given_xy;
    r.v_rate = all_of({rate_upper, converse_rates_hold(r, info)});

    const double d = r.delta;
    const double lo = std::log2(static_cast<double>(params.l())) / nn;
    const double hi = lo + d * h_src + (2.0 - d) * gamma + ((d > 0.0 ? d * std::log2(d) : 0.0) + 1.0) / nn;
    r.v_sandwich = all_of({r.i_xy_per_symbol >= lo - kBoundTolerance,
                           r.i_xy_per_symbol <= hi + kBoundTolerance});
  } else {
    r.i_sx = r.i_sy = r.i_xy_per_symbol = r.h_s_given_xy = kNaN;
    r.v_rate = all_of({rate_upper});
  }
  common_verdicts(r, info, pr, 1.0 / static_cast<double>(params.l()), cfg.source.support_size());
  return r;
}

ExperimentRecord evaluate_symbolwise(const ExperimentConfig& cfg, std::size_t n, double gamma,
                                     const RandomStream& rng) {
  ExperimentRecord r;
  r.n = n;
  r.gamma_n = gamma;
  const SymbolwiseCodec codec(BaseScheme::fstar(cfg.scheme.modulus, cfg.source.support_size()),
                              cfg.source, n, gamma);
  const SymbolwiseQuantities q = exact_symbolwise_quantities(codec);
  const double nn = static_cast<double>(n);
  r.rate_x = q.rate_x;
  r.rate_y = q.rate_y;
  r.rate_u = q.rate_u;

  // The block joint is the n-fold product of the per-symbol joint.
  Information info;
  info.available = true;
  info.i_xy = nn * q.i_xy_per_symbol;
  info.i_sx = nn * q.i_sx_per_symbol;
  info.i_sy = nn * q.i_sy_per_symbol;
  info.h_s = nn * q.h_s;
  info.h_x = nn * entropy(codec.p_x());
  info.h_y = nn * entropy(codec.p_y());
  info.h_s_given_xy = nn * q.h_s_given_xy;

  Probabilities pr;
  if (cfg.mode == Mode::kExact) {
    auto attack = [&](Direction d) {
      try {
        return symbolwise_optimal_attack(codec, d).success_prob;
      } catch (const InfeasibleExact&) {
        return fstar_attack_by_types(codec).success_prob;
      }
    };
    pr.p_e = Estimate::exact(q.p_e);
    pr.alpha = Estimate::exact(q.alpha);
    pr.beta = Estimate::exact(q.beta);
    pr.p_x = Estimate::exact(attack(Direction::kForgeX));
    pr.p_y = Estimate::exact(attack(Direction::kForgeY));
  } else {
    const Pmf uniform = Pmf::uniform(cfg.scheme.modulus);
    pr.p_e = pr.alpha = Estimate::from(monte_carlo_estimate(
        symbolwise_rejection_trials(codec), cfg.trials, rng.split(0), cfg.threads));
    pr.p_x = Estimate::from(monte_carlo_estimate(
        symbolwise_attack_trials(codec, Direction::kForgeX, uniform), cfg.trials, rng.split(1),
        cfg.threads));
    pr.p_y = Estimate::from(monte_carlo_estimate(
        symbolwise_attack_trials(codec, Direction::kForgeY, uniform), cfg.trials, rng.split(2),
        cfg.threads));
    pr.beta = Estimate::from(monte_carlo_estimate(symbolwise_product_trials(codec), cfg.trials,
                                                  rng.split(3), cfg.threads));
  }
  fill_probabilities(r, pr);

  r.i_sx = info.i_sx;
  r.i_sy = info.i_sy;
  r.i_xy_per_symbol = q.i_xy_per_symbol;
  r.h_s_given_xy = info.h_s_given_xy;
  r.v_rate = all_of({converse_rates_hold(r, info)});
  r.v_sandwich = all_of({std::abs(q.i_xy_per_symbol -
                                  correlation_level_fstar(cfg.scheme.modulus, cfg.source)) <=
                         kBoundTolerance});
  const double direct = std::exp2(-nn * (codec.ell() - gamma));
  common_verdicts(r, info, pr, direct, cfg.source.support_size());
  return r;
}

ExperimentRecord skipped(std::size_t n, double gamma, const std::string& reason) {
  ExperimentRecord r;
  r.n = n;
  r.gamma_n = gamma;
  for (double* f : {&r.rate_x, &r.rate_y, &r.rate_u, &r.p_e, &r.p_x, &r.p_y, &r.i_sx, &r.i_sy,
                    &r.i_xy_per_symbol, &r.exp_x, &r.exp_y, &r.alpha, &r.beta, &r.h_s_given_xy,
                    &r.delta, &r.p_e_ci_low, &r.p_e_ci_high, &r.p_x_ci_low, &r.p_x_ci_high,
                    &r.p_y_ci_low, &r.p_y_ci_high, &r.beta_ci_low, &r.beta_ci_high}) {
    *f = kNaN;
  }
  r.skipped_reason = reason;
  return r;
}

}  // namespace

ExperimentRecord evaluate_n(const ExperimentConfig& cfg, std::size_t n) {
  const double gamma = gamma_at(cfg.schedule, n);
  const RandomStream rng = RandomStream(cfg.seed).split(n);
  try {
    if (cfg.scheme.kind == SchemeSpec::Kind::kBlockwise) return evaluate_blockwise(cfg, n, gamma, rng);
    return evaluate_symbolwise(cfg, n, gamma, rng);
  } catch (const CapExceeded& e) {
    return skipped(n, gamma, e.what());
  } catch (const EmptyTypicalSet& e) {
    return skipped(n, gamma, e.what());
  } catch (const InfeasibleExact& e) {
    return skipped(n, gamma, e.what());
  } catch (const std::invalid_argument& e) {
    return skipped(n, gamma, e.what());
  }
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = cfg;
  report.version = library_version();
  for (std::size_t n : cfg.n_values) report.records.push_back(evaluate_n(cfg, n));
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool any_violated(const ExperimentReport& r) {
  for (const auto& rec : r.records) {
    for (Verdict v : {rec.v_rate, rec.v_exp, rec.v_logsum, rec.v_fano, rec.v_sandwich}) {
      if (v == Verdict::kViolated) return true;
    }
  }
  return false;
}

// ---- serialization ----

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

ordered_json real_json(double v) {
  if (!std::isfinite(v)) return format_real(v);
  // Round to the printed precision; the shortest round-trip form of that
  // double is what gets written.
  return std::stod(format_real(v));
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return kNaN;
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  throw std::invalid_argument("bad real value '" + s + "'");
}

struct RealField {
  const char* name;
  double ExperimentRecord::*member;
};

constexpr RealField kCsvReals[] = {
    {"gamma_n", &ExperimentRecord::gamma_n}, {"rate_x", &ExperimentRecord::rate_x},
    {"rate_y", &ExperimentRecord::rate_y},   {"rate_u", &ExperimentRecord::rate_u},
    {"p_e", &ExperimentRecord::p_e},         {"p_x", &ExperimentRecord::p_x},
    {"p_y", &ExperimentRecord::p_y},         {"i_sx", &ExperimentRecord::i_sx},
    {"i_sy", &ExperimentRecord::i_sy},       {"i_xy_per_symbol", &ExperimentRecord::i_xy_per_symbol},
    {"exp_x", &ExperimentRecord::exp_x},     {"exp_y", &ExperimentRecord::exp_y},
};

constexpr RealField kExtraReals[] = {
    {"alpha", &ExperimentRecord::alpha},
    {"beta", &ExperimentRecord::beta},
    {"h_s_given_xy", &ExperimentRecord::h_s_given_xy},
    {"delta", &ExperimentRecord::delta},
    {"p_e_ci_low", &ExperimentRecord::p_e_ci_low},
    {"p_e_ci_high", &ExperimentRecord::p_e_ci_high},
    {"p_x_ci_low", &ExperimentRecord::p_x_ci_low},
    {"p_x_ci_high", &ExperimentRecord::p_x_ci_high},
    {"p_y_ci_low", &ExperimentRecord::p_y_ci_low},
    {"p_y_ci_high", &ExperimentRecord::p_y_ci_high},
    {"beta_ci_low", &ExperimentRecord::beta_ci_low},
    {"beta_ci_high", &ExperimentRecord::beta_ci_high},
};

struct VerdictField {
  const char* name;
  Verdict ExperimentRecord::*member;
};

constexpr VerdictField kVerdicts[] = {
    {"v_rate", &ExperimentRecord::v_rate},     {"v_exp", &ExperimentRecord::v_exp},
    {"v_logsum", &ExperimentRecord::v_logsum}, {"v_fano", &ExperimentRecord::v_fano},
    {"v_sandwich", &ExperimentRecord::v_sandwich},
};

ordered_json record_json(const ExperimentRecord& r) {
  ordered_json j;
  j["type"] = "record";
  j["n"] = r.n;
  for (const auto& f : kCsvReals) j[f.name] = real_json(r.*f.member);
  for (const auto& f : kVerdicts) j[f.name] = verdict_name(r.*f.member);
  for (const auto& f : kExtraReals) j[f.name] = real_json(r.*f.member);
  j["l_n"] = r.l_n;
  j["m_n"] = r.m_n;
  j["skipped_reason"] = r.skipped_reason;
  return j;
}

}  // namespace

void emit_report(const ExperimentReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::kCsv) {
    out << kCsvHeader << '\n';
    for (const auto& r : report.records) {
      out << r.n;
      for (const auto& f : kCsvReals) out << ',' << format_real(r.*f.member);
      for (const auto& f : kVerdicts) out << ',' << verdict_name(r.*f.member);
      out << '\n';
    }
  } else {
    ordered_json meta;
    meta["type"] = "metadata";
    meta["version"] = report.version;
    meta["rng"] = std::string(RandomStream::kAlgorithm);
    meta["config"] = report.config.to_json();
    meta["wall_time_s"] = report.wall_time_s;
    out << meta.dump() << '\n';
    for (const auto& r : report.records) out << record_json(r).dump() << '\n';
  }
  if (!out) throw std::ios_base::failure("failed to write report");
}

ExperimentReport read_jsonl(std::istream& in) {
  ExperimentReport report;
  std::string line;
  bool have_meta = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const auto type = j.at("type").get<std::string>();
    if (type == "metadata") {
      report.config = ExperimentConfig::from_json(j.at("config"));
      report.version = j.at("version").get<std::string>();
      report.wall_time_s = j.at("wall_time_s").get<double>();
      have_meta = true;
    } else if (type == "record") {
      ExperimentRecord r;
      r.n = j.at("n").get<std::size_t>();
      for (const auto& f : kCsvReals) r.*f.member = real_from_json(j.at(f.name));
      for (const auto& f : kVerdicts) r.*f.member = parse_verdict(j.at(f.name).get<std::string>());
      for (const auto& f : kExtraReals) r.*f.member = real_from_json(j.at(f.name));
      r.l_n = j.at("l_n").get<std::uint64_t>();
      r.m_n = j.at("m_n").get<std::uint64_t>();
      r.skipped_reason = j.at("skipped_reason").get<std::string>();
      report.records.push_back(std::move(r));
    } else {
      throw std::invalid_argument("unknown report line type '" + type + "'");
    }
  }
  if (!have_meta) throw std::invalid_argument("report has no metadata line");
  return report;
}

}  // namespace tss

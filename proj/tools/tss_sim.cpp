// tss-sim: command-line front end for the share schemes, attacks and
// experiment sweeps.
//
// Exit status: 0 on success, 1 on a configuration or usage error, 2 when an
// experiment reports a violated bound.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tss/adversary.hpp"
#include "tss/blockwise.hpp"
#include "tss/errors.hpp"
#include "tss/harness.hpp"
#include "tss/symbolwise.hpp"
#include "tss/typicality.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitViolated = 2;

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string mode = "exact";
  std::string out;
  std::string format = "csv";
};

struct SchemeOptions {
  std::string kind = "blockwise";
  std::string source = "0.5,0.5";
  std::size_t n = 4;
  double ell = 0.5;
  std::size_t modulus = 0;
  std::optional<double> gamma;
  double exponent = 1.0 / 3.0;
};

void add_common(CLI::App* app, CommonOptions& c) {
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("--mode", c.mode, "Evaluation mode")->check(CLI::IsMember({"exact", "mc"}));
  app->add_option("--out", c.out, "Output file (default: stdout)");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
}

void add_scheme(CLI::App* app, SchemeOptions& s) {
  app->add_option("--scheme", s.kind, "Scheme kind")
      ->check(CLI::IsMember({"blockwise", "symbolwise"}));
  app->add_option("--source", s.source, "Source PMF, e.g. 0.7,0.3 or [0.7,0.3]");
  app->add_option("-n,--n", s.n, "Blocklength")->check(CLI::PositiveNumber);
  app->add_option("--ell", s.ell, "Correlation level (blockwise)");
  app->add_option("--M", s.modulus, "Share alphabet size (symbolwise; default |S|)");
  app->add_option("--gamma", s.gamma, "Fixed typicality slack (default: n^-a)");
  app->add_option("--gamma-exponent", s.exponent, "Exponent a of the n^-a schedule");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw tss::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

tss::Sequence parse_sequence(const std::string& text) {
  tss::Sequence out;
  std::string token;
  std::stringstream ss(text);
  while (ss >> token) {
    std::stringstream parts(token);
    std::string piece;
    while (std::getline(parts, piece, ',')) {
      if (piece.empty()) continue;
      std::size_t used = 0;
      const unsigned long v = std::stoul(piece, &used);
      if (used != piece.size()) throw tss::ConfigError("bad symbol '" + piece + "'");
      out.push_back(static_cast<tss::Symbol>(v));
    }
  }
  return out;
}

std::string join(const tss::Sequence& s, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(s[i]);
  }
  return out;
}

tss::BlockShare parse_block_share(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw tss::ConfigError("block share must be 'l:m', got '" + text + "'");
  return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
}

std::string show(const tss::BlockShare& s) {
  return std::to_string(s.l_idx) + ":" + std::to_string(s.m_idx);
}

// Builds whichever scheme the options describe.
struct Scheme {
  tss::Pmf source;
  double gamma;
  std::optional<tss::BlockwiseParams> block;
  std::optional<tss::SymbolwiseCodec> symbol;
};

Scheme build_scheme(const SchemeOptions& o) {
  tss::Pmf source = tss::Pmf::parse(o.source);
  const double gamma = o.gamma ? *o.gamma
                               : tss::gamma_at(tss::GammaSchedule::power_law(o.exponent), o.n);
  Scheme s{source, gamma, std::nullopt, std::nullopt};
  if (o.kind == "blockwise") {
    s.block.emplace(tss::BlockwiseParams::make(source, o.n, o.ell, gamma));
  } else {
    const std::size_t m = o.modulus ? o.modulus : source.support_size();
    s.symbol.emplace(tss::BaseScheme::fstar(m, source.support_size()), source, o.n, gamma);
  }
  return s;
}

void write_table(std::ostream& out, const std::string& format,
                 const std::vector<std::pair<std::string, ordered_json>>& fields) {
  if (format == "jsonl") {
    ordered_json j;
    for (const auto& [k, v] : fields) j[k] = v;
    out << j.dump() << '\n';
    return;
  }
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
  out << '\n';
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto& v = fields[i].second;
    out << (i ? "," : "");
    if (v.is_string()) {
      out << v.get<std::string>();
    } else if (v.is_number_float()) {
      out << tss::format_real(v.get<double>());
    } else {
      out << v.dump();
    }
  }
  out << '\n';
}

ordered_json real(double v) {
  if (!std::isfinite(v)) return tss::format_real(v);
  return v;
}

int run_encode(const CommonOptions& c, const SchemeOptions& o, const std::string& secret_text) {
  const Scheme s = build_scheme(o);
  const tss::Sequence secret = parse_sequence(secret_text);
  tss::RandomStream rng(c.seed);
  Output out(c.out);
  if (s.block) {
    const auto r = tss::draw_randomness(*s.block, rng);
    const auto [x, y] = tss::encode(*s.block, secret, r);
    write_table(out.stream(), c.format,
                {{"scheme", "blockwise"},
                 {"n", o.n},
                 {"z", s.block->index().xi_plus(secret)},
                 {"x", show(x)},
                 {"y", show(y)}});
  } else {
    tss::Sequence u(secret.size());
    for (auto& v : u) v = static_cast<tss::Symbol>(rng.next_below(s.symbol->base().randomness_size));
    const auto [x, y] = s.symbol->encode_n(secret, u);
    write_table(out.stream(), c.format,
                {{"scheme", "symbolwise"}, {"n", o.n}, {"x", join(x)}, {"y", join(y)}});
  }
  return kExitOk;
}

int run_decode(const CommonOptions& c, const SchemeOptions& o, const std::string& xs,
               const std::string& ys) {
  const Scheme s = build_scheme(o);
  tss::DecodeOutcome outcome = tss::DecodeOutcome::reject();
  double score = 0.0;
  if (s.block) {
    outcome = tss::decode(*s.block, parse_block_share(xs), parse_block_share(ys));
  } else {
    const auto x = parse_sequence(xs);
    const auto y = parse_sequence(ys);
    score = s.symbol->llr_score(x, y);
    outcome = s.symbol->decode_n(x, y);
  }
  Output out(c.out);
  std::vector<std::pair<std::string, ordered_json>> fields{
      {"outcome", outcome.is_reject() ? "reject" : "secret"},
      {"secret", outcome.is_reject() ? std::string() : join(outcome.value())}};
  if (s.symbol) {
    fields.emplace_back("score", real(score));
    fields.emplace_back("threshold", real(s.symbol->threshold()));
  }
  write_table(out.stream(), c.format, fields);
  return kExitOk;
}

int run_attack(const CommonOptions& c, const SchemeOptions& o, std::uint64_t trials,
               unsigned threads) {
  const Scheme s = build_scheme(o);
  const tss::RandomStream rng(c.seed);
  Output out(c.out);
  bool header = false;
  for (auto d : {tss::Direction::kForgeX, tss::Direction::kForgeY}) {
    tss::AttackResult r;
    std::string forgery;
    if (c.mode == "exact") {
      if (s.block) {
        const auto laws = tss::share_laws(*s.block);
        r = tss::BlockwiseAttack(*s.block, laws).optimal(d);
        forgery = show(s.block->share_from_code(r.forgery.at(0)));
      } else {
        r = tss::symbolwise_optimal_attack(*s.symbol, d);
        tss::Sequence f(r.forgery.begin(), r.forgery.end());
        forgery = join(f);
      }
    } else {
      const auto stream = rng.split(d == tss::Direction::kForgeX ? 1 : 2);
      if (s.block) {
        r = tss::monte_carlo_attack(
            tss::blockwise_attack_trials(*s.block, d, tss::Pmf::uniform(s.block->share_alphabet())),
            trials, stream, threads);
      } else {
        const std::size_t m = d == tss::Direction::kForgeX ? s.symbol->x_size() : s.symbol->y_size();
        r = tss::monte_carlo_attack(
            tss::symbolwise_attack_trials(*s.symbol, d, tss::Pmf::uniform(m)), trials, stream,
            threads);
      }
      forgery = "uniform";
    }
    std::vector<std::pair<std::string, ordered_json>> fields{
        {"direction", d == tss::Direction::kForgeX ? "x" : "y"},
        {"success_prob", real(r.success_prob)},
        {"exponent", real(r.success_prob > 0 ? -std::log2(r.success_prob) / static_cast<double>(o.n)
                                             : INFINITY)},
        {"forgery", forgery},
        {"mode", c.mode},
        {"trials", r.trials},
        {"ci_low", real(r.ci_low)},
        {"ci_high", real(r.ci_high)}};
    if (c.format == "csv" && header) {
      // Second row only.
      std::ostringstream tmp;
      write_table(tmp, c.format, fields);
      const std::string text = tmp.str();
      out.stream() << text.substr(text.find('\n') + 1);
    } else {
      write_table(out.stream(), c.format, fields);
    }
    header = true;
  }
  return kExitOk;
}

int run_validate(const CommonOptions& c, const std::string& base, const std::string& source_text,
                 std::size_t modulus) {
  const tss::Pmf source = tss::Pmf::parse(source_text);
  const std::size_t ms = source.support_size();
  const std::size_t m = modulus ? modulus : ms;
  tss::BaseScheme scheme;
  if (base == "fstar") {
    scheme = tss::BaseScheme::fstar(m, ms);
  } else if (base == "identity-leak") {
    scheme = tss::identity_leak_scheme(m, ms);
  } else if (base == "non-decodable") {
    scheme = tss::non_decodable_scheme(m, ms);
  } else {
    scheme = tss::undersized_scheme(m, ms);
  }
  const tss::BaseValidation v = tss::validate_base(scheme, source);
  std::string failures;
  for (const auto& f : v.failures) failures += (failures.empty() ? "" : " ") + f;
  Output out(c.out);
  write_table(out.stream(), c.format,
              {{"scheme", scheme.name},
               {"h_s", real(v.h_s)},
               {"h_s_given_x", real(v.h_s_given_x)},
               {"h_s_given_y", real(v.h_s_given_y)},
               {"h_s_given_xy", real(v.h_s_given_xy)},
               {"ell", real(v.ell)},
               {"sizes_ok", v.sizes_ok},
               {"verdict", v.passed ? "pass" : "fail"},
               {"failures", failures}});
  return v.passed ? kExitOk : kExitViolated;
}

int run_experiment_cmd(const CommonOptions& c, CLI::App* sub, const std::string& config_path,
                       std::optional<std::uint64_t> trials, std::optional<unsigned> threads) {
  tss::ExperimentConfig cfg = tss::load_config(config_path);
  if (sub->count("--seed")) cfg.seed = c.seed;
  if (sub->count("--mode")) cfg.mode = c.mode == "exact" ? tss::Mode::kExact : tss::Mode::kMonteCarlo;
  if (trials) cfg.trials = *trials;
  if (threads) cfg.threads = *threads;
  cfg.validate();
  const tss::ExperimentReport report = tss::run_experiment(cfg);
  Output out(c.out);
  tss::emit_report(report, c.format == "csv" ? tss::ReportFormat::kCsv : tss::ReportFormat::kJsonLines,
                   out.stream());
  for (const auto& r : report.records) {
    if (!r.skipped_reason.empty()) {
      std::cerr << "n=" << r.n << " skipped: " << r.skipped_reason << '\n';
    }
  }
  return tss::any_violated(report) ? kExitViolated : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold secret sharing with impersonation detection: schemes, attacks and "
               "bound checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tss::library_version());

  CommonOptions common;
  SchemeOptions scheme;

  auto* encode = app.add_subcommand("encode", "Split a secret block into two shares");
  add_common(encode, common);
  add_scheme(encode, scheme);
  std::string secret;
  encode->add_option("--secret", secret, "Secret symbols, e.g. 0,1,0,1")->required();

  auto* decode = app.add_subcommand("decode", "Recover a secret block or reject a share pair");
  add_common(decode, common);
  add_scheme(decode, scheme);
  std::string xs, ys;
  decode->add_option("--x", xs, "First share (blockwise l:m, symbolwise 0,1,...)")->required();
  decode->add_option("--y", ys, "Second share")->required();

  auto* attack = app.add_subcommand("attack", "Impersonation success probability in both directions");
  add_common(attack, common);
  add_scheme(attack, scheme);
  std::uint64_t attack_trials = 1000000;
  unsigned attack_threads = 1;
  attack->add_option("--trials", attack_trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  attack->add_option("--threads", attack_threads, "Worker threads (0 = all cores)");

  auto* validate = app.add_subcommand("validate-scheme", "Check a one-shot base scheme");
  add_common(validate, common);
  std::string base = "fstar";
  std::string vsource = "0.5,0.5";
  std::size_t vmod = 0;
  validate->add_option("--base", base, "Base scheme")
      ->check(CLI::IsMember({"fstar", "identity-leak", "non-decodable", "undersized"}));
  validate->add_option("--source", vsource, "Source PMF");
  validate->add_option("--M", vmod, "Share alphabet size (default |S|)");

  auto* experiment = app.add_subcommand("experiment", "Run a blocklength sweep from a config file");
  add_common(experiment, common);
  std::string config_path;
  std::optional<std::uint64_t> exp_trials;
  std::optional<unsigned> exp_threads;
  experiment->add_option("config", config_path, "Experiment config (JSON)")->required();
  experiment->add_option("--trials", exp_trials, "Override Monte Carlo trials");
  experiment->add_option("--threads", exp_threads, "Override worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*encode) return run_encode(common, scheme, secret);
    if (*decode) return run_decode(common, scheme, xs, ys);
    if (*attack) return run_attack(common, scheme, attack_trials, attack_threads);
    if (*validate) return run_validate(common, base, vsource, vmod);
    if (*experiment) return run_experiment_cmd(common, experiment, config_path, exp_trials, exp_threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

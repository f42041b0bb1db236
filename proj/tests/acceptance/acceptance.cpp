// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// line fails. Reference values come from the dense helpers in oracle.hpp or
// from brute force written out below, never from the code under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "tss/adversary.hpp"
#include "tss/blockwise.hpp"
#include "tss/harness.hpp"
#include "tss/symbolwise.hpp"
#include "tss/typicality.hpp"

namespace {

using tss::BaseScheme;
using tss::BlockwiseParams;
using tss::Direction;
using tss::Pmf;
using tss::Sequence;
using tss::SymbolwiseCodec;

const Pmf kSkewed({0.7, 0.3});
const std::vector<double> kSkewedVec{0.7, 0.3};

double default_gamma(std::size_t n) { return tss::gamma_at(tss::GammaSchedule::default_schedule(), n); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failed sub-checks into a single criterion outcome.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (failures_.size() < 4) failures_.push_back(what);
    }
  }
  Outcome done(const std::string& summary) const {
    std::string d = summary;
    for (const auto& f : failures_) d += "; failed: " + f;
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  std::vector<std::string> failures_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1 ----
Outcome blockwise_secrecy() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (std::size_t n : {4u, 6u, 8u}) {
    for (double ell : {0.0, 0.5}) {
      const auto p = BlockwiseParams::make(kSkewed, n, ell, default_gamma(n));
      const auto q = tss::exact_quantities(p);
      worst = std::max({worst, q.i_sx, q.i_sy});
      c.expect(q.i_sx <= 1e-9 && q.i_sy <= 1e-9, "n=" + std::to_string(n) + fmt(" ell=%g", ell));
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 60.0, "runtime");
  return c.done(fmt("max I(S^n;share) = %.3g bits", worst) + fmt(", %.2f s", secs));
}

// Configurations shared by 2 and 3.
struct BaseCase {
  std::size_t m;
  Pmf source;
};

std::vector<BaseCase> base_cases() {
  std::vector<BaseCase> v;
  for (std::size_t m : {2u, 3u, 4u}) {
    v.push_back({m, Pmf::uniform(2)});
    v.push_back({m, kSkewed});
  }
  return v;
}

// ---- 2 ----
Outcome symbolwise_secrecy() {
  Check c;
  double worst_i = 0, worst_m = 0;
  for (const auto& bc : base_cases()) {
    const auto scheme = BaseScheme::fstar(bc.m, 2);
    const auto j = tss::base_joint(scheme, bc.source);
    const std::size_t s[] = {0}, x[] = {2}, y[] = {3};
    const double isx = tss::mutual_information(j, s, x);
    const double isy = tss::mutual_information(j, s, y);
    worst_i = std::max({worst_i, isx, isy});
    c.expect(isx <= 1e-9 && isy <= 1e-9, "secrecy M=" + std::to_string(bc.m));
    for (std::size_t axis : {2u, 3u}) {
      const Pmf marg = j.marginal_pmf(axis);
      for (std::size_t k = 0; k < bc.m; ++k) {
        const double dev = std::abs(marg[k] - 1.0 / double(bc.m));
        worst_m = std::max(worst_m, dev);
        c.expect(dev <= 1e-12, "uniform share M=" + std::to_string(bc.m));
      }
    }
  }
  return c.done(fmt("max I = %.3g bits", worst_i) + fmt(", max marginal deviation %.3g", worst_m));
}

// Joint of (X^n, Y^n) by enumerating every (s^n, u^n).
tss::JointPmf block_share_joint(std::size_t m, const Pmf& src, std::size_t n) {
  const std::vector<Pmf> f{tss::iid_extension(src, n).materialize(), tss::iid_extension(Pmf::uniform(m), n).materialize()};
  const auto su = tss::JointPmf::product(f);
  const std::uint64_t share_count = tss::checked_power(m, n);
  return tss::pushforward(
      su,
      [&](std::span<const std::size_t> in, std::span<std::size_t> out) {
        const Sequence s = tss::decode_sequence(in[0], src.support_size(), n);
        const Sequence u = tss::decode_sequence(in[1], m, n);
        std::uint64_t xc = 0, yc = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const auto [x, y] = tss::fstar(m, src.support_size(), s[i], u[i]);
          xc = xc * m + x;
          yc = yc * m + y;
        }
        out[0] = xc;
        out[1] = yc;
        return true;
      },
      {share_count, share_count});
}

// ---- 3 ----
Outcome correlation_identity() {
  Check c;
  double worst_sym = 0, worst_block = 0;
  for (const auto& bc : base_cases()) {
    const auto v = tss::validate_base(BaseScheme::fstar(bc.m, 2), bc.source);
    const double target = std::log2(double(bc.m)) - static_cast<double>(oracle::entropy(std::vector<double>(bc.source.probs().begin(), bc.source.probs().end())));
    worst_sym = std::max(worst_sym, std::abs(v.ell - target));
    c.expect(std::abs(v.ell - target) <= 1e-9, "per-symbol M=" + std::to_string(bc.m));
    for (std::size_t n = 1; n <= 6; ++n) {
      const double ixy = tss::mutual_information(block_share_joint(bc.m, bc.source, n));
      const double dev = std::abs(ixy - double(n) * v.ell);
      worst_block = std::max(worst_block, dev);
      c.expect(dev <= 1e-8, "block n=" + std::to_string(n) + " M=" + std::to_string(bc.m));
    }
  }
  return c.done(fmt("max |I - (log M - H)| = %.3g", worst_sym) + fmt(", max |I_n - n I| = %.3g", worst_block));
}

// ---- 4 ----
Outcome correlation_sandwich() {
  Check c;
  std::string summary;
  for (std::size_t n : {4u, 8u, 12u}) {
    const double gamma = default_gamma(n);
    const auto p = BlockwiseParams::make(kSkewed, n, 0.5, gamma);
    const auto q = tss::exact_quantities(p);
    // Atypical mass from the oracle, by brute force over all tuples.
    const double d = static_cast<double>(oracle::BlockOracle(kSkewedVec, n, gamma, p.l()).atypical());
    const double nn = double(n);
    const double h = tss::entropy(kSkewed);
    const double lo = std::log2(double(p.l())) / nn;
    const double hi = lo + d * h + (2 - d) * gamma + (d * std::log2(d) + 1) / nn;
    const double v = q.i_xy / nn;
    c.expect(v >= lo - 1e-9 && v <= hi + 1e-9, "n=" + std::to_string(n));
    summary += fmt(" n=%g:", nn) + fmt(" %.4f", lo) + fmt("<=%.4f", v) + fmt("<=%.4f", hi);
  }
  return c.done("(1/n)I(X;Y) within bounds:" + summary);
}

// Brute-force optimal forgeries at the given n: every forged share against
// every honest share in its row (other rows never pass the first test).
struct BruteBlockAttack {
  oracle::Real p_x = 0;
  oracle::Real p_y = 0;
};

BruteBlockAttack brute_block_attack(const oracle::BlockOracle& o) {
  const std::uint64_t mod = o.m + 1;
  // Law of the second component of each share; the first is uniform on L.
  std::vector<oracle::Real> xm(mod, 0), ym(mod, 0);
  for (std::size_t i = 0; i < o.tuples.size(); ++i) {
    const oracle::Real ps = oracle::tuple_prob(o.tuples[i], o.source);
    for (std::uint64_t um = 0; um < mod; ++um) {
      xm[o.x_code(o.z[i], 0, um)] += ps / mod;
      ym[o.y_code(0, um)] += ps / mod;
    }
  }
  BruteBlockAttack best;
  const oracle::Real pl = oracle::Real(1) / o.l;
  for (std::uint64_t f = 0; f < o.share_count(); ++f) {
    const std::uint64_t row = f / mod;
    oracle::Real ax = 0, ay = 0;
    for (std::uint64_t h = row * mod; h < (row + 1) * mod; ++h) {
      if (o.accept(f, h)) ax += pl * ym[h % mod];
      if (o.accept(h, f)) ay += pl * xm[h % mod];
    }
    best.p_x = std::max(best.p_x, ax);
    best.p_y = std::max(best.p_y, ay);
  }
  return best;
}

// ---- 5 ----
Outcome blockwise_attack_bound() {
  Check c;
  std::string summary;
  for (std::size_t n : {4u, 8u, 12u}) {
    const double gamma = default_gamma(n);
    const auto p = BlockwiseParams::make(kSkewed, n, 0.5, gamma);
    const auto laws = tss::share_laws(p);
    const tss::BlockwiseAttack atk(p, laws);
    const double px = atk.optimal(Direction::kForgeX).success_prob;
    const double py = atk.optimal(Direction::kForgeY).success_prob;
    const double inv_l = 1.0 / double(p.l());
    c.expect(px <= inv_l && py <= inv_l, "1/L n=" + std::to_string(n));

    const oracle::BlockOracle o(kSkewedVec, n, gamma, p.l());
    const auto brute = brute_block_attack(o);
    const double closed = double(o.m) / (double(o.l) * double(o.m + 1));
    c.expect(std::abs(double(brute.p_x) - closed) <= 1e-14 && std::abs(double(brute.p_y) - closed) <= 1e-14,
             "oracle closed form n=" + std::to_string(n));
    c.expect(std::abs(px - double(brute.p_x)) <= 1e-14 && std::abs(py - double(brute.p_y)) <= 1e-14,
             "match oracle n=" + std::to_string(n));
    summary += " n=" + std::to_string(n) + fmt(": P=%.6g", px) + fmt(" 1/L=%.6g", inv_l);
  }
  return c.done("P^X = P^Y = M/(L(M+1))," + summary);
}

// Every forged block against every honest block, weighted by the honest law.
double brute_symbol_attack(const SymbolwiseCodec& codec, Direction d) {
  const unsigned n = static_cast<unsigned>(codec.length());
  const auto blocks = oracle::all_tuples(static_cast<unsigned>(codec.x_size()), n);
  const Pmf& law = d == Direction::kForgeX ? codec.p_y() : codec.p_x();
  const std::vector<double> hp(law.probs().begin(), law.probs().end());
  std::vector<Sequence> seqs;
  std::vector<oracle::Real> prob;
  for (const auto& b : blocks) {
    seqs.emplace_back(b.begin(), b.end());
    prob.push_back(oracle::tuple_prob(b, hp));
  }
  oracle::Real best = 0;
  for (const auto& f : seqs) {
    oracle::Real acc = 0;
    for (std::size_t h = 0; h < seqs.size(); ++h) {
      const bool ok = d == Direction::kForgeX ? codec.accepts_n(f, seqs[h]) : codec.accepts_n(seqs[h], f);
      if (ok) acc += prob[h];
    }
    best = std::max(best, acc);
  }
  return static_cast<double>(best);
}

// ---- 6 ----
Outcome symbolwise_attack_bound() {
  Check c;
  std::string summary;
  for (std::size_t n : {4u, 6u, 8u}) {
    const double gamma = default_gamma(n);
    const SymbolwiseCodec codec(BaseScheme::fstar(4, 2), Pmf::uniform(2), n, gamma);
    const double px = tss::symbolwise_optimal_attack(codec, Direction::kForgeX).success_prob;
    const double py = tss::symbolwise_optimal_attack(codec, Direction::kForgeY).success_prob;
    const double bound = std::exp2(-double(n) * (1.0 - gamma));
    c.expect(px <= bound + 1e-12 && py <= bound + 1e-12, "bound n=" + std::to_string(n));
    if (n <= 6) {
      const double bx = brute_symbol_attack(codec, Direction::kForgeX);
      const double by = brute_symbol_attack(codec, Direction::kForgeY);
      c.expect(std::abs(bx - px) <= 1e-14 && std::abs(by - py) <= 1e-14, "enumeration n=" + std::to_string(n));
    } else {
      const double types = tss::fstar_attack_by_types(codec).success_prob;
      c.expect(std::abs(types - px) <= 1e-14 && std::abs(types - py) <= 1e-14, "type counting n=8");
    }
    summary += " n=" + std::to_string(n) + fmt(": P=%.6g", std::max(px, py)) + fmt(" bound=%.6g", bound);
  }
  return c.done(summary.substr(1));
}

// ---- 7 ----
Outcome exponent_convergence() {
  Check c;
  std::string summary;
  auto series_check = [&](const std::string& name, double ell,
                          const std::vector<std::size_t>& ns,
                          const std::function<void(std::size_t, double&, double&, double&, double&)>& eval) {
    double prev_gap = INFINITY;
    summary += " " + name + ":";
    for (std::size_t n : ns) {
      double px, py, i_xy, alpha;
      eval(n, px, py, i_xy, alpha);
      const double nn = double(n);
      const double ex = -std::log2(px) / nn, ey = -std::log2(py) / nn;
      const double gap = std::max(std::abs(ex - ell), std::abs(ey - ell));
      c.expect(gap <= prev_gap + 1e-12, name + " approach n=" + std::to_string(n));
      prev_gap = gap;
      c.expect(std::min(ex, ey) >= ell - default_gamma(n), name + " direct n=" + std::to_string(n));
      const auto conv = tss::converse_exponent_check(i_xy, alpha, px, py, n);
      c.expect(conv.holds, name + " converse n=" + std::to_string(n));
      summary += fmt(" %.5f", ex);
    }
  };
  series_check("blockwise(0.7,0.3) ell=0.5", 0.5, {4, 8, 12},
               [](std::size_t n, double& px, double& py, double& i_xy, double& alpha) {
                 const auto p = BlockwiseParams::make(kSkewed, n, 0.5, default_gamma(n));
                 const auto q = tss::exact_quantities(p);
                 const tss::BlockwiseAttack atk(p, q.laws);
                 px = atk.optimal(Direction::kForgeX).success_prob;
                 py = atk.optimal(Direction::kForgeY).success_prob;
                 i_xy = q.i_xy;
                 alpha = q.alpha;
               });
  series_check("symbolwise M=4 uniform ell=1", 1.0, {4, 6, 8},
               [](std::size_t n, double& px, double& py, double& i_xy, double& alpha) {
                 const SymbolwiseCodec codec(BaseScheme::fstar(4, 2), Pmf::uniform(2), n, default_gamma(n));
                 const auto q = tss::exact_symbolwise_quantities(codec);
                 px = tss::symbolwise_optimal_attack(codec, Direction::kForgeX).success_prob;
                 py = tss::symbolwise_optimal_attack(codec, Direction::kForgeY).success_prob;
                 i_xy = double(n) * q.i_xy_per_symbol;
                 alpha = q.alpha;
               });
  return c.done("exponents" + summary);
}

// The Monte Carlo suite shared by 8, 9 and 12.
tss::ExperimentConfig mc_config(const std::string& text, unsigned threads) {
  auto cfg = tss::parse_config(text);
  cfg.threads = threads;
  return cfg;
}

const char* const kMcSuite[] = {
    R"({"source": [0.7, 0.3], "scheme": {"kind": "symbolwise", "M": 3}, "n_values": [8, 16, 32],
        "mode": "mc", "trials": 1000000, "seed": 7})",
    R"({"source": [0.5, 0.5], "scheme": {"kind": "symbolwise", "M": 4}, "n_values": [8, 16, 32],
        "mode": "mc", "trials": 1000000, "seed": 7})",
    R"({"source": [0.7, 0.3], "scheme": {"kind": "blockwise", "ell": 0.5}, "n_values": [4, 8, 12],
        "mode": "mc", "trials": 1000000, "seed": 7})",
};

std::vector<tss::ExperimentReport> run_mc_suite(unsigned threads) {
  std::vector<tss::ExperimentReport> out;
  for (const char* text : kMcSuite) out.push_back(tss::run_experiment(mc_config(text, threads)));
  return out;
}

// ---- 8 ----
Outcome decoding_error(const tss::ExperimentReport& symbolwise_mc) {
  Check c;
  std::vector<double> exact;
  for (std::size_t n : {4u, 8u, 12u}) {
    const double gamma = default_gamma(n);
    const auto p = BlockwiseParams::make(kSkewed, n, 0.5, gamma);
    const double pe = tss::exact_quantities(p).p_e;
    const double delta = tss::atypical_mass(kSkewed, n, gamma);
    const double brute = static_cast<double>(oracle::BlockOracle(kSkewedVec, n, gamma, p.l()).atypical());
    c.expect(std::abs(pe - delta) <= 1e-15, "P_e vs atypical mass n=" + std::to_string(n));
    c.expect(std::abs(pe - brute) <= 1e-14, "P_e vs oracle n=" + std::to_string(n));
    exact.push_back(pe);
  }
  c.expect(exact[2] < exact[1], "blockwise decrease 8 -> 12");

  const auto& r = symbolwise_mc.records;
  c.expect(r.size() == 3 && r[0].n == 8 && r[2].n == 32, "symbolwise record layout");
  std::string mc;
  if (r.size() == 3) {
    c.expect(r[0].p_e > r[1].p_e && r[1].p_e > r[2].p_e, "symbolwise decrease");
    c.expect(r[0].p_e_ci_low > r[2].p_e_ci_high, "CIs overlap between n=8 and n=32");
    for (const auto& rec : r) mc += fmt(" %.5f", rec.p_e) + fmt("[%.5f,", rec.p_e_ci_low) + fmt("%.5f]", rec.p_e_ci_high);
  }
  return c.done(fmt("blockwise P_e %.6g", exact[0]) + fmt(" %.6g", exact[1]) + fmt(" %.6g", exact[2]) +
                "; symbolwise MC" + mc);
}

// ---- 9 ----
Outcome converse_checks(const std::vector<tss::ExperimentReport>& reports) {
  Check c;
  std::size_t checked = 0;
  for (const auto& rep : reports) {
    const bool mc = rep.config.mode == tss::Mode::kMonteCarlo;
    for (const auto& r : rep.records) {
      const std::string where = "n=" + std::to_string(r.n) + (mc ? " mc" : " exact");
      c.expect(r.skipped_reason.empty(), "skipped " + where);
      c.expect(r.v_logsum == tss::Verdict::kHolds, "logsum " + where);
      c.expect(r.v_fano == tss::Verdict::kHolds, "fano " + where);
      if (mc) {
        // Estimates of equal quantities, compared through their intervals.
        c.expect(r.beta_ci_low <= std::min(r.p_x_ci_high, r.p_y_ci_high) + 1e-12, "beta " + where);
      } else {
        c.expect(r.beta <= std::min(r.p_x, r.p_y) + 1e-12, "beta " + where);
      }
      ++checked;
    }
  }
  return c.done(std::to_string(checked) + " records checked");
}

// ---- 10 ----
Outcome rate_bounds() {
  Check c;
  std::size_t checked = 0;
  for (const Pmf& src : {kSkewed, Pmf::uniform(2), Pmf({0.5, 0.3, 0.2})}) {
    const double h = tss::entropy(src);
    for (double ell : {0.0, 0.5, 1.0}) {
      for (std::size_t n : {4u, 6u, 8u, 10u, 12u}) {
        const double gamma = default_gamma(n);
        const double nn = double(n);
        BlockwiseParams p = BlockwiseParams::make(src, n, ell, gamma);
        const double rate = std::log2(double(p.share_alphabet())) / nn;
        const std::string where = "H=" + fmt("%.3f", h) + fmt(" ell=%g", ell) + " n=" + std::to_string(n);
        c.expect(rate <= h + ell + gamma + 1.0 / nn, "upper " + where);
        c.expect(rate >= h + ell - gamma - 1.0 / nn, "lower " + where);
        // Member count against the typical-set lower bound.
        std::uint64_t members = 0;
        oracle::Real atyp = 0;
        const std::vector<double> probs(src.probs().begin(), src.probs().end());
        for (const auto& t : oracle::all_tuples(static_cast<unsigned>(src.support_size()), static_cast<unsigned>(n))) {
          if (oracle::typical(t, probs, gamma)) ++members;
          else atyp += oracle::tuple_prob(t, probs);
        }
        c.expect(members == p.m(), "M_n " + where);
        c.expect(double(members) >= (1.0 - double(atyp)) * std::exp2(nn * (h - gamma)), "M_n lower " + where);
        ++checked;
      }
    }
  }
  return c.done(std::to_string(checked) + " (source, ell, n) points");
}

// ---- 11 ----
Outcome scheme_validation() {
  Check c;
  std::mt19937_64 g(2024);
  for (int i = 0; i < 10; ++i) {
    const std::size_t ms = 2 + g() % 4;
    const std::size_t m = ms + g() % 4;
    std::vector<double> w(ms);
    double total = 0;
    for (auto& x : w) total += (x = 0.01 + std::uniform_real_distribution<double>(0, 1)(g));
    double acc = 0;
    for (std::size_t k = 0; k + 1 < ms; ++k) acc += (w[k] /= total);
    w[ms - 1] = 1 - acc;
    const auto v = tss::validate_base(BaseScheme::fstar(m, ms), Pmf(w));
    c.expect(v.passed, "fstar M=" + std::to_string(m) + " M_S=" + std::to_string(ms));
  }
  const auto has = [](const tss::BaseValidation& v, const char* what) {
    return !v.passed && std::find(v.failures.begin(), v.failures.end(), what) != v.failures.end();
  };
  c.expect(has(tss::validate_base(tss::identity_leak_scheme(3, 2), kSkewed), "security_x"), "identity-leak");
  c.expect(has(tss::validate_base(tss::non_decodable_scheme(3, 2), kSkewed), "decodability"), "non-decodable");
  c.expect(has(tss::validate_base(tss::undersized_scheme(2, 3), Pmf({0.5, 0.3, 0.2})), "alphabet_size"),
           "undersized");
  return c.done("10 random sources pass; 3 broken schemes fail on the named condition");
}

// ---- 12 ----
std::string render(const std::vector<tss::ExperimentReport>& reports, tss::ReportFormat f) {
  std::ostringstream out;
  for (auto r : reports) {
    r.wall_time_s = 0.0;  // the only field allowed to differ
    tss::emit_report(r, f, out);
  }
  return out.str();
}

Outcome reproducibility(const std::vector<tss::ExperimentReport>& first) {
  Check c;
  const auto second = run_mc_suite(1);
  const auto threaded = run_mc_suite(4);
  const std::string csv = render(first, tss::ReportFormat::kCsv);
  const std::string jsonl = render(first, tss::ReportFormat::kJsonLines);
  c.expect(csv == render(second, tss::ReportFormat::kCsv), "csv rerun");
  c.expect(jsonl == render(second, tss::ReportFormat::kJsonLines), "jsonl rerun");
  c.expect(csv == render(threaded, tss::ReportFormat::kCsv), "csv 4 threads");
  c.expect(jsonl == render(threaded, tss::ReportFormat::kJsonLines), "jsonl 4 threads");
  return c.done(std::to_string(csv.size() + jsonl.size()) + " bytes identical across 3 runs (1, 1, 4 threads)");
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %02d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  };

  report(1, "blockwise perfect secrecy", blockwise_secrecy);
  report(2, "symbolwise perfect secrecy", symbolwise_secrecy);
  report(3, "correlation level identity", correlation_identity);
  report(4, "correlation sandwich", correlation_sandwich);
  report(5, "blockwise attack bound", blockwise_attack_bound);
  report(6, "symbolwise attack bound", symbolwise_attack_bound);
  report(7, "exponent convergence", exponent_convergence);

  std::vector<tss::ExperimentReport> mc;
  std::vector<tss::ExperimentReport> exact;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    mc = run_mc_suite(1);
    for (const char* text : {
             R"({"source": [0.7, 0.3], "scheme": {"kind": "blockwise", "ell": 0.5}, "n_values": [4, 8, 12]})",
             R"({"source": [0.7, 0.3], "scheme": {"kind": "blockwise", "ell": 0.0}, "n_values": [4, 6, 8]})",
             R"({"source": [0.5, 0.5], "scheme": {"kind": "blockwise", "ell": 0.5}, "n_values": [4, 8, 12]})",
             R"({"source": [0.7, 0.3], "scheme": {"kind": "symbolwise", "M": 3}, "n_values": [4, 8, 16, 32]})",
             R"({"source": [0.5, 0.5], "scheme": {"kind": "symbolwise", "M": 4}, "n_values": [4, 6, 8]})"}) {
      exact.push_back(tss::run_experiment(tss::parse_config(text)));
    }
  } catch (const std::exception& e) {
    std::printf("experiment suite failed: %s\n", e.what());
  }
  std::printf("(experiment suite: %.1f s)\n", seconds_since(t0));

  report(8, "decoding error", [&] {
    if (mc.empty()) return Outcome{false, "no Monte Carlo report"};
    return decoding_error(mc[0]);
  });
  report(9, "converse bound checks", [&] {
    if (mc.empty() || exact.empty()) return Outcome{false, "no experiment records"};
    std::vector<tss::ExperimentReport> all = mc;
    all.insert(all.end(), exact.begin(), exact.end());
    return converse_checks(all);
  });
  report(10, "rate bounds", rate_bounds);
  report(11, "scheme validation", scheme_validation);
  report(12, "reproducibility", [&] {
    if (mc.empty()) return Outcome{false, "no Monte Carlo report"};
    return reproducibility(mc);
  });

  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

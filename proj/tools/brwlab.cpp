// brwlab: command-line front end for rate computations, simulations and
// strategy experiments. Every CSV starts with a provenance comment.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "brw/enumerate.hpp"
#include "brw/errors.hpp"
#include "brw/gaussian.hpp"
#include "brw/ldp.hpp"
#include "brw/parallel.hpp"
#include "brw/population.hpp"
#include "brw/rates.hpp"

#ifndef BRWLAB_VERSION
#define BRWLAB_VERSION "dev"
#endif

namespace {

using namespace brw;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string num(long double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15Lg", v);
  return buf;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string output;
};

/// Parameters that determine the data rows; output, threads and config path
/// are excluded from the hash.
class Provenance {
 public:
  explicit Provenance(std::string command) : command_(std::move(command)) {}

  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    params_.emplace_back(key, os.str());
  }
  void add_list(const std::string& key, const std::vector<std::int64_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ";") + std::to_string(x);
    params_.emplace_back(key, s);
  }

  std::string header(std::uint64_t seed) const {
    std::string canon = command_;
    for (const auto& [k, v] : params_) canon += "\n" + k + "=" + v;
    canon += "\nseed=" + std::to_string(seed);
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(canon)));
    std::string out = "# brwlab " BRWLAB_VERSION " seed=" + std::to_string(seed) + " config=" + hash +
                      " command=" + command_;
    for (const auto& [k, v] : params_) out += " " + k + "=" + v;
    return out;
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> params_;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void check_probability(double p, const char* name, bool open) {
  const bool ok = open ? (p > 0.0 && p < 1.0) : (p >= 0.0 && p <= 1.0);
  if (!ok)
    throw std::invalid_argument(std::string(name) + " = " + num(p) + " must lie in " +
                                (open ? "(0, 1)" : "[0, 1]"));
}

EvolveConfig evolve_config(const std::string& mode, std::uint64_t cap) {
  EvolveConfig c;
  c.mode = parse_mode(mode);
  c.cap = cap;
  return c;
}

std::uint64_t sub_seed(std::uint64_t seed, std::int64_t tag) {
  return Stream::mix(seed ^ Stream::mix(static_cast<std::uint64_t>(tag) + 0x51ed2701ULL));
}

// --- rate ---------------------------------------------------------------

struct RateArgs {
  std::vector<std::string> sets;
  std::vector<double> p;
  std::vector<int> b{2};
  bool lower = false;
};

void cmd_rate(const RateArgs& a, const Common& c) {
  Provenance prov("rate");
  std::vector<IntervalSet> sets;
  for (const auto& s : a.sets) sets.push_back(parse_interval_set(s));
  for (double p : a.p) check_probability(p, "p", true);
  for (int b : a.b)
    if (b < 2) throw std::invalid_argument("b must be >= 2");
  for (const auto& s : sets) prov.add("set", quoted(to_string(s)));
  for (double p : a.p) prov.add("p", num(p));
  for (int b : a.b) prov.add("b", b);
  prov.add("lower", a.lower);

  Output out(c.output);
  auto& os = out.stream();
  os << prov.header(c.seed) << '\n';
  os << "set,p,b,regime,scale,i_tilde,x_star,j_tilde,r_star,x_star_dilation,i_rate,j_rate,near_critical,"
        "non_monotone\n";
  for (const auto& s : sets)
    for (double p : a.p)
      for (int b : a.b) {
        const RateReport r = a.lower ? lower_tail_rate(s, p, b) : classify(s, p, b);
        os << quoted(to_string(s)) << ',' << num(p) << ',' << b << ',' << to_string(r.regime) << ','
           << to_string(r.scale) << ',' << num(r.i_tilde) << ',' << (r.x_star ? num(*r.x_star) : "") << ','
           << num(r.j_tilde) << ',' << num(r.r_star) << ',' << num(r.x_star_dilation) << ',' << num(r.i_rate)
           << ',' << num(r.j_rate) << ',' << r.near_critical << ',' << r.non_monotone << '\n';
      }
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string law = "2:0.5,3:0.5";
  std::int64_t n = 10;
  std::int64_t replicas = 1;
  std::string mode = "hybrid";
  std::uint64_t cap = 10'000'000;
  std::string set;
  std::string snapshot;
};

void cmd_simulate(const SimulateArgs& a, const Common& c) {
  const BranchingLaw law = parse_branching_law(a.law);
  if (a.n < 0) throw std::invalid_argument("n must be >= 0");
  if (a.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  const EvolveConfig cfg = evolve_config(a.mode, a.cap);
  std::optional<IntervalSet> track;
  if (!a.set.empty()) track = parse_interval_set(a.set);

  Provenance prov("simulate");
  prov.add("law", to_string(law));
  prov.add("n", a.n);
  prov.add("replicas", a.replicas);
  prov.add("mode", to_string(cfg.mode));
  prov.add("cap", cfg.cap);
  if (track) prov.add("set", quoted(to_string(*track)));

  const auto runs = parallel_map(static_cast<std::size_t>(a.replicas), c.threads, [&](std::size_t i) {
    Stream rng = Stream::derive(c.seed, i);
    return evolve(ParticleMeasure::point(0), law, a.n, cfg, rng, track ? &*track : nullptr);
  });

  Output out(c.output);
  auto& os = out.stream();
  os << prov.header(c.seed) << '\n';
  os << "replica,generation,total_log,normalized_total,mean_position,fraction_A\n";
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (const auto& s : runs[i].trajectory)
      os << i << ',' << s.generation << ',' << num(s.total_log) << ',' << num(s.normalized_total) << ','
         << num(s.mean_position) << ',' << (s.fraction ? num(*s.fraction) : "") << '\n';
  if (!a.snapshot.empty()) {
    std::ofstream snap(a.snapshot);
    if (!snap) throw std::runtime_error("cannot open snapshot file " + a.snapshot);
    write_snapshot(snap, runs.front().final_measure);
  }
}

// --- ldp ----------------------------------------------------------------

struct LdpArgs {
  std::string set;
  double p = 0.8;
  std::string law = "2:0.5,3:0.5";
  std::string kind = "shift";
  std::optional<double> x;
  std::optional<double> r;
  std::vector<std::int64_t> n{100, 400, 900};
  std::int64_t replicas = 1000;
  std::string mode = "hybrid";
  std::uint64_t cap = 10'000;
};

void cmd_ldp(const LdpArgs& a, const Common& c) {
  const IntervalSet set = parse_interval_set(a.set);
  check_probability(a.p, "p", true);
  const BranchingLaw law = parse_branching_law(a.law);
  if (a.kind != "shift" && a.kind != "dilation") throw std::invalid_argument("kind must be shift or dilation");
  if (a.replicas < 100) throw std::invalid_argument("ldp needs replicas >= 100");
  const bool dilation = a.kind == "dilation";

  const RateReport report = classify(set, a.p, law.b());
  double x = 0.0;
  double r = 0.0;
  if (dilation) {
    r = a.r.value_or(report.r_star);
    x = a.x.value_or(report.x_star_dilation);
  } else {
    if (a.x) {
      x = *a.x;
    } else if (report.x_star && std::isfinite(*report.x_star)) {
      x = *report.x_star;
    } else {
      throw DomainError("no finite shift witness for this (A, p); pass --x or use --kind dilation");
    }
  }

  RunOptions opt;
  opt.replicas = a.replicas;
  opt.threads = c.threads;
  opt.evolve = evolve_config(a.mode, a.cap);

  Provenance prov("ldp");
  prov.add("set", quoted(to_string(set)));
  prov.add("p", num(a.p));
  prov.add("law", to_string(law));
  prov.add("kind", a.kind);
  prov.add("x", num(x));
  prov.add("r", num(r));
  prov.add_list("n", a.n);
  prov.add("replicas", a.replicas);
  prov.add("mode", to_string(opt.evolve.mode));
  prov.add("cap", opt.evolve.cap);

  std::vector<LdpEstimate> est;
  for (std::int64_t n : a.n) {
    const StrategySpec spec = dilation ? dilation_strategy(r, x, n) : shift_strategy(x, n);
    opt.seed = sub_seed(c.seed, n);
    est.push_back(ldp_lower_bound(spec, set, a.p, law, opt));
  }

  Output out(c.output);
  auto& os = out.stream();
  os << prov.header(c.seed) << '\n';
  os << "n,kind,x,r,w,q,s,log_prefix,q_hat,ci_lo,ci_hi,log_neg_log,theory_rate,gap\n";
  for (const auto& e : est) {
    const auto& s = e.spec;
    os << s.n << ',' << to_string(s.kind) << ',' << num(s.x) << ',' << num(s.r) << ',' << s.w << ',' << s.q << ','
       << s.s << ',' << num(e.log_prefix_prob) << ',' << num(e.success.q_hat) << ',' << num(e.success.ci_lo) << ','
       << num(e.success.ci_hi) << ',' << num(e.log_neg_log) << ',' << num(e.theory_rate) << ','
       << num(e.relative_gap) << '\n';
  }
  for (const auto& e : est)
    if (e.zero_success)
      os << "# n=" << e.spec.n << ": no successes; composed with the Wilson upper endpoint " << num(e.q_used) << '\n';
  if (est.size() >= 3) {
    const RateFit fit = rate_fit(est, report.scale);
    os << "# fit scale=" << to_string(fit.scale) << " slope=" << num(fit.fit.slope)
       << " intercept=" << num(fit.fit.intercept) << " slope_se=" << num(fit.fit.slope_se) << '\n';
  }
}

// --- interp -------------------------------------------------------------

struct InterpArgs {
  double alpha = 0.75;
  double p = 0.5;
  double delta = 0.05;
  std::int64_t k0 = 2;
  std::vector<std::int64_t> n{100, 1000, 10000, 100000};
  int b = 2;
};

void cmd_interp(const InterpArgs& a, const Common& c) {
  if (!(a.alpha > 0.5 && a.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (1/2, 1)");
  check_probability(a.p, "p", true);
  if (!(a.delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (a.b < 2) throw std::invalid_argument("b must be >= 2");
  const InterpolationFit fit = interpolation_cost_exponent(a.alpha, a.p, a.delta, a.k0, a.n, a.b);

  Provenance prov("interp");
  prov.add("alpha", num(a.alpha));
  prov.add("p", num(a.p));
  prov.add("delta", num(a.delta));
  prov.add("k0", a.k0);
  prov.add_list("n", a.n);
  prov.add("b", a.b);

  Output out(c.output);
  auto& os = out.stream();
  os << prov.header(c.seed) << '\n';
  os << "n,k,w,cost,residual,alpha_hat\n";
  for (std::size_t i = 0; i < fit.n.size(); ++i)
    os << fit.n[i] << ',' << fit.k_opt[i] << ',' << fit.w[i] << ',' << num(fit.cost[i]) << ','
       << num(fit.residuals[i]) << ',' << num(fit.alpha_hat) << '\n';
}

// --- enumerate ------------------------------------------------------------

struct EnumerateArgs {
  std::int64_t n = 2;
  std::string law = "2:1";
  std::string set;
  double p = 1.0;
};

void cmd_enumerate(const EnumerateArgs& a, const Common& c) {
  const BranchingLaw law = parse_branching_law(a.law);
  const IntervalSet set = parse_interval_set(a.set);
  check_probability(a.p, "p", false);
  const Rational prob = enumerate_exact(a.n, law, set, a.p);

  Provenance prov("enumerate");
  prov.add("n", a.n);
  prov.add("law", to_string(law));
  prov.add("set", quoted(to_string(set)));
  prov.add("p", num(a.p));

  Output out(c.output);
  auto& os = out.stream();
  os << prov.header(c.seed) << '\n';
  os << "n,p,probability,exact\n";
  os << a.n << ',' << num(a.p) << ',' << num(prob.convert_to<double>()) << ',' << prob << '\n';
}

// --- probes ---------------------------------------------------------------

struct ConcentrationArgs {
  std::vector<std::int64_t> N{100, 400, 1600};
  std::string set = "(-inf,0]";
  double delta = 0.05;
  std::int64_t n = 16;
  std::string law = "2:0.5,3:0.5";
  std::int64_t replicas = 10000;
  std::string mode = "aggregated";
  std::uint64_t cap = 10'000;
};

void cmd_probe_concentration(const ConcentrationArgs& a, const Common& c) {
  const IntervalSet set = parse_interval_set(a.set);
  const BranchingLaw law = parse_branching_law(a.law);
  if (a.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  if (a.n < 0) throw std::invalid_argument("n must be >= 0");
  RunOptions opt;
  opt.replicas = a.replicas;
  opt.threads = c.threads;
  opt.evolve = evolve_config(a.mode, a.cap);

  Provenance prov("probe-concentration");
  prov.add_list("N", a.N);
  prov.add("set", quoted(to_string(set)));
  prov.add("delta", num(a.delta));
  prov.add("n", a.n);
  prov.add("law", to_string(law));
  prov.add("replicas", a.replicas);
  prov.add("mode", to_string(opt.evolve.mode));
  prov.add("cap", opt.evolve.cap);

  std::vector<ProbeResult> res;
  for (std::int64_t N : a.N) {
    opt.seed = sub_seed(c.seed, N);
    res.push_back(concentration_probe(N, set, a.delta, a.n, law, opt));
  }

  Output out(c.output);
  auto& os = out.stream();
  os << prov.header(c.seed) << '\n';
  os << "N,n,delta,reference,events,replicas,frequency\n";
  for (std::size_t i = 0; i < res.size(); ++i)
    os << a.N[i] << ',' << a.n << ',' << num(a.delta) << ',' << num(res[i].reference) << ',' << res[i].events << ','
       << res[i].replicas << ',' << num(res[i].frequency) << '\n';
  if (res.size() >= 2) {
    const DecayFit d = frequency_decay_fit(a.N, res);
    os << "# decay slope=" << num(d.slope) << " slope_se=" << num(d.slope_se)
       << " negative_at_99=" << d.negative_at_99 << '\n';
  }
}

struct TypicalArgs {
  std::string set = "(-inf,0]";
  double t = 2.0;
  std::vector<std::int64_t> n{64, 256, 1024};
  std::string law = "2:0.5,3:0.5";
  std::int64_t replicas = 1000;
  std::string mode = "hybrid";
  std::uint64_t cap = 10'000;
};

void cmd_probe_typical(const TypicalArgs& a, const Common& c) {
  const IntervalSet set = parse_interval_set(a.set);
  const BranchingLaw law = parse_branching_law(a.law);
  if (a.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  RunOptions opt;
  opt.replicas = a.replicas;
  opt.threads = c.threads;
  opt.evolve = evolve_config(a.mode, a.cap);

  Provenance prov("probe-typical");
  prov.add("set", quoted(to_string(set)));
  prov.add("t", num(a.t));
  prov.add_list("n", a.n);
  prov.add("law", to_string(law));
  prov.add("replicas", a.replicas);
  prov.add("mode", to_string(opt.evolve.mode));
  prov.add("cap", opt.evolve.cap);

  std::vector<ProbeResult> res;
  for (std::int64_t n : a.n) {
    opt.seed = sub_seed(c.seed, n);
    res.push_back(typical_deviation_probe(set, a.t, n, law, opt));
  }

  Output out(c.output);
  auto& os = out.stream();
  os << prov.header(c.seed) << '\n';
  os << "n,t,threshold,events,replicas,frequency\n";
  for (std::size_t i = 0; i < res.size(); ++i)
    os << a.n[i] << ',' << num(a.t) << ',' << num(res[i].reference) << ',' << res[i].events << ','
       << res[i].replicas << ',' << num(res[i].frequency) << '\n';
}

// --- clt-scan -------------------------------------------------------------

struct CltArgs {
  std::string set = "(-inf,0]";
  double R = 2.0;
  std::vector<std::int64_t> n{25, 100, 400};
  int rho_points = 41;
};

void cmd_clt_scan(const CltArgs& a, const Common& c) {
  const IntervalSet set = parse_interval_set(a.set);
  if (!(a.R >= 1.0)) throw std::invalid_argument("R must be >= 1");
  Provenance prov("clt-scan");
  prov.add("set", quoted(to_string(set)));
  prov.add("R", num(a.R));
  prov.add_list("n", a.n);
  prov.add("rho_points", a.rho_points);

  std::vector<CltScanResult> res;
  for (std::int64_t n : a.n) res.push_back(clt_uniformity_scan(set, a.R, n, a.rho_points));

  Output out(c.output);
  auto& os = out.stream();
  os << prov.header(c.seed) << '\n';
  os << "n,R,sup_error,rho_at,xi_at,xi_radius,evaluations\n";
  for (std::size_t i = 0; i < res.size(); ++i)
    os << a.n[i] << ',' << num(a.R) << ',' << num(res[i].sup_error) << ',' << num(res[i].rho_at) << ','
       << num(res[i].xi_at) << ',' << num(res[i].xi_radius) << ',' << res[i].evaluations << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branching random walk large-deviation lab"};
  app.set_version_flag("--version", BRWLAB_VERSION);
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags take precedence");
  app.require_subcommand(1);

  Common common;
  app.add_option("--seed", common.seed, "master seed (default 1)")->envname("BRWLAB_SEED");
  app.add_option("--threads", common.threads, "worker threads for replicas (0 = all cores)");
  app.add_option("-o,--output", common.output, "output CSV path (default stdout)");
  app.fallthrough();

  RateArgs rate;
  auto* c_rate = app.add_subcommand("rate", "rate coefficients and regime of P(Zbar_n(sqrt(n) A) >= p)");
  c_rate->add_option("--set", rate.sets, "interval-set expression; repeat for several")
      ->required()
      ->allow_extra_args(false);  // keep "[a,b]" whole
  c_rate->add_option("--p", rate.p, "level(s) p in (0,1)")->required();
  c_rate->add_option("--b", rate.b, "minimal offspring number(s)");
  c_rate->add_flag("--lower", rate.lower, "lower tail P(Zbar <= p) via the complement");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "trajectories of |Z_n|, |Zhat_n|, Mbar_n and Zbar_n(sqrt(n) A)");
  c_sim->add_option("--law", sim.law, "offspring law k:prob,...");
  c_sim->add_option("--n", sim.n, "generations");
  c_sim->add_option("--replicas", sim.replicas, "independent runs");
  c_sim->add_option("--mode", sim.mode, "exact | aggregated | hybrid");
  c_sim->add_option("--cap", sim.cap, "exact-mode particle cap");
  c_sim->add_option("--set", sim.set, "tracked set A");
  c_sim->add_option("--snapshot", sim.snapshot, "write the final measure of replica 0 here");

  LdpArgs ldp;
  auto* c_ldp = app.add_subcommand("ldp", "shift/dilation lower-bound estimates of log(-log P)");
  c_ldp->add_option("--set", ldp.set, "target set A")->required();
  c_ldp->add_option("--p", ldp.p, "level p");
  c_ldp->add_option("--law", ldp.law, "offspring law");
  c_ldp->add_option("--kind", ldp.kind, "shift | dilation");
  c_ldp->add_option("--x", ldp.x, "shift x (default: rate witness)");
  c_ldp->add_option("--r", ldp.r, "dilation r (default: rate witness)");
  c_ldp->add_option("--n", ldp.n, "horizons");
  c_ldp->add_option("--replicas", ldp.replicas, "replicas per conditional estimate (>= 100)");
  c_ldp->add_option("--mode", ldp.mode, "exact | aggregated | hybrid");
  c_ldp->add_option("--cap", ldp.cap, "hybrid switch-over total");

  InterpArgs interp;
  auto* c_interp = app.add_subcommand("interp", "cost exponent of the interpolation family");
  c_interp->add_option("--alpha", interp.alpha, "target exponent in (1/2, 1)");
  c_interp->add_option("--p", interp.p, "level p");
  c_interp->add_option("--delta", interp.delta, "center growth x_k = k^(1+delta)");
  c_interp->add_option("--k0", interp.k0, "first index (>= 2)");
  c_interp->add_option("--n", interp.n, "horizons");
  c_interp->add_option("--b", interp.b, "minimal offspring number");

  EnumerateArgs en;
  auto* c_en = app.add_subcommand("enumerate", "exact P(Zbar_n(sqrt(n) A) >= p) for tiny n");
  c_en->add_option("--n", en.n, "generations");
  c_en->add_option("--law", en.law, "offspring law");
  c_en->add_option("--set", en.set, "set A")->required();
  c_en->add_option("--p", en.p, "level p in [0,1]");

  ConcentrationArgs conc;
  auto* c_conc = app.add_subcommand("probe-concentration", "P(Zbar^{N delta_0}_n(S) > nu_n(S) + Delta)");
  c_conc->add_option("--N", conc.N, "initial population sizes");
  c_conc->add_option("--set", conc.set, "set A (S = sqrt(n) A)");
  c_conc->add_option("--delta", conc.delta, "deviation Delta");
  c_conc->add_option("--n", conc.n, "generations");
  c_conc->add_option("--law", conc.law, "offspring law");
  c_conc->add_option("--replicas", conc.replicas, "replicas per N");
  c_conc->add_option("--mode", conc.mode, "exact | aggregated | hybrid");
  c_conc->add_option("--cap", conc.cap, "hybrid switch-over total");

  TypicalArgs typ;
  auto* c_typ = app.add_subcommand("probe-typical", "P(Zbar_n(sqrt(n) A) > nu(A) + t/sqrt(n))");
  c_typ->add_option("--set", typ.set, "set A");
  c_typ->add_option("--t", typ.t, "deviation t > 0");
  c_typ->add_option("--n", typ.n, "horizons");
  c_typ->add_option("--law", typ.law, "offspring law");
  c_typ->add_option("--replicas", typ.replicas, "replicas per n");
  c_typ->add_option("--mode", typ.mode, "exact | aggregated | hybrid");
  c_typ->add_option("--cap", typ.cap, "hybrid switch-over total");

  CltArgs clt;
  auto* c_clt = app.add_subcommand("clt-scan", "sup |nu_n(sqrt(n)(rho A + xi)) - nu(rho A + xi)|");
  c_clt->add_option("--set", clt.set, "set A");
  c_clt->add_option("--R", clt.R, "rho range [1/R, R]");
  c_clt->add_option("--n", clt.n, "horizons");
  c_clt->add_option("--rho-points", clt.rho_points, "odd number of rho grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_rate) cmd_rate(rate, common);
    else if (*c_sim) cmd_simulate(sim, common);
    else if (*c_ldp) cmd_ldp(ldp, common);
    else if (*c_interp) cmd_interp(interp, common);
    else if (*c_en) cmd_enumerate(en, common);
    else if (*c_conc) cmd_probe_concentration(conc, common);
    else if (*c_typ) cmd_probe_typical(typ, common);
    else if (*c_clt) cmd_clt_scan(clt, common);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}

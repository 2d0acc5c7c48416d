#include "brw/ldp.hpp"

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "brw/errors.hpp"
#include "brw/gaussian.hpp"
#include "brw/parallel.hpp"

namespace brw {

namespace {

using boost::multiprecision::cpp_int;

// (b^s - 1) / (b - 1)
cpp_int geometric_count(int b, std::int64_t s) {
  cpp_int pow = 1;
  for (std::int64_t i = 0; i < s; ++i) pow *= b;
  return (pow - 1) / (b - 1);
}

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_neg_log_forced_step(const BranchingLaw& law) {
  // -log(p_b 2^-b) > 0 since p_b 2^-b <= 1/4
  const int b = law.b();
  return std::log(b * std::log(2.0) - std::log(law.probability(b)));
}

void check_spec(const StrategySpec& s) {
  if (s.n <= 0) throw std::invalid_argument("strategy horizon n must be positive");
  if (s.s >= s.n)
    throw DomainError("strategy prefix s = " + std::to_string(s.s) + " leaves no generations (n = " +
                      std::to_string(s.n) + ")");
}

std::int64_t lattice_offset(double x, std::int64_t n) {
  const double mag = std::floor(std::abs(x) * std::sqrt(static_cast<double>(n)));
  const auto w = static_cast<std::int64_t>(mag);
  return x < 0 ? -w : w;
}

}  // namespace

std::string_view to_string(StrategyKind k) noexcept { return k == StrategyKind::shift ? "shift" : "dilation"; }

StrategySpec shift_strategy(double x, std::int64_t n) {
  if (!std::isfinite(x)) throw std::invalid_argument("strategy shift x must be finite");
  StrategySpec s;
  s.kind = StrategyKind::shift;
  s.x = x;
  s.n = n;
  s.w = lattice_offset(x, n);
  s.s = std::abs(s.w);
  s.m = n - s.s;
  check_spec(s);
  return s;
}

StrategySpec dilation_strategy(double r, double x, std::int64_t n) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("dilation r must lie in [0, 1)");
  if (!std::isfinite(x)) throw std::invalid_argument("strategy shift x must be finite");
  StrategySpec s;
  s.kind = StrategyKind::dilation;
  s.x = x;
  s.r = r;
  s.n = n;
  s.w = lattice_offset(x, n);
  s.q = 2 * static_cast<std::int64_t>(std::floor(r * static_cast<double>(n) / 2.0));
  s.s = s.q + std::abs(s.w);
  s.m = n - s.s;
  check_spec(s);
  return s;
}

long double strategy_prefix_logprob(const StrategySpec& spec, const BranchingLaw& law) {
  if (spec.s == 0) return 0.0L;
  const int b = law.b();
  const long double step = std::log(static_cast<long double>(law.probability(b))) -
                           static_cast<long double>(b) * std::log(2.0L);
  const long double count = geometric_count(b, spec.s).convert_to<long double>();
  const long double v = step * count;
  if (!std::isfinite(v)) throw NumericFailure("prefix log-probability overflows extended precision");
  return v;
}

double strategy_prefix_log_neg_logprob(const StrategySpec& spec, const BranchingLaw& law) {
  if (spec.s == 0) return -kInf;
  // log((b^s - 1)/(b - 1)) without forming b^s
  const double lb = std::log(static_cast<double>(law.b()));
  const double ls = static_cast<double>(spec.s) * lb;
  return log_neg_log_forced_step(law) + ls + std::log(-std::expm1(-ls)) - std::log(law.b() - 1.0);
}

WilsonInterval wilson(std::int64_t k, std::int64_t n, double z) {
  if (n <= 0) throw std::invalid_argument("wilson interval needs n > 0");
  if (k < 0 || k > n) throw std::invalid_argument("wilson interval needs 0 <= k <= n");
  const double nn = static_cast<double>(n);
  const double ph = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (ph + z2 / (2 * nn)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / denom;
  WilsonInterval w;
  w.lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  w.hi = k == n ? 1.0 : std::min(1.0, center + half);
  return w;
}

SuccessEstimate conditional_success_estimate(const StrategySpec& spec, const IntervalSet& a, double p,
                                             const BranchingLaw& law, const RunOptions& opt) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (opt.replicas < 100) throw std::invalid_argument("conditional_success_estimate needs >= 100 replicas");
  const IntervalSet target = shift(lattice_scaled(a, spec.n), -static_cast<double>(spec.w));
  SuccessEstimate est;
  est.replicas = opt.replicas;
  if (target.is_real_line()) {
    est.successes = opt.replicas;
  } else {
    const auto hits = parallel_map(static_cast<std::size_t>(opt.replicas), opt.threads, [&](std::size_t i) -> int {
      Stream rng = Stream::derive(opt.seed, i);
      const Population pop = evolve_population(Population::point(0), law, spec.m, opt.evolve, rng);
      return pop.fraction(target) >= p ? 1 : 0;
    });
    for (int h : hits) est.successes += h;
  }
  est.q_hat = static_cast<double>(est.successes) / static_cast<double>(est.replicas);
  const WilsonInterval ci = wilson(est.successes, est.replicas);
  est.ci_lo = ci.lo;
  est.ci_hi = ci.hi;
  return est;
}

double compose_log_neg_log(double log_neg_prefix, std::int64_t s, int b, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("success probability must lie in (0, 1]");
  const double neg_log_q = -std::log(q);
  const double log_tail = neg_log_q > 0.0
                              ? static_cast<double>(s) * std::log(static_cast<double>(b)) + std::log(neg_log_q)
                              : -kInf;
  return log_add_exp(log_neg_prefix, log_tail);
}

LdpEstimate ldp_lower_bound(const StrategySpec& spec, const IntervalSet& a, double p, const BranchingLaw& law,
                            const RunOptions& opt) {
  const double vp = varphi(a, spec.r, spec.x);
  if (vp < p - 1e-8)
    throw DomainError("infeasible strategy: varphi(A, r, x) = " + std::to_string(vp) + " < p = " +
                      std::to_string(p) + " (deficit " + std::to_string(p - vp) + ")");
  LdpEstimate e;
  e.spec = spec;
  e.log_prefix_prob = strategy_prefix_logprob(spec, law);
  e.success = conditional_success_estimate(spec, a, p, law, opt);
  e.zero_success = e.success.successes == 0;
  e.q_used = e.zero_success ? e.success.ci_hi : e.success.q_hat;
  e.log_neg_log = compose_log_neg_log(strategy_prefix_log_neg_logprob(spec, law), spec.s, law.b(), e.q_used);

  const RateReport report = classify(a, p, law.b());
  e.theory_rate = report.rate();
  e.scale = report.scale;
  const double nn = static_cast<double>(spec.n);
  const double denom = e.theory_rate * (e.scale == RateScale::sqrt_n ? std::sqrt(nn) : nn);
  e.relative_gap = denom > 0.0 && std::isfinite(denom) ? std::abs(e.log_neg_log / denom - 1.0)
                                                       : std::numeric_limits<double>::quiet_NaN();
  return e;
}

RateFit rate_fit(std::span<const std::int64_t> n, std::span<const double> log_neg_log, RateScale scale) {
  if (n.size() != log_neg_log.size()) throw std::invalid_argument("rate_fit: size mismatch");
  if (n.size() < 3) throw std::invalid_argument("rate_fit needs at least 3 grid points");
  std::vector<double> x;
  x.reserve(n.size());
  for (std::int64_t v : n) {
    const double d = static_cast<double>(v);
    x.push_back(scale == RateScale::sqrt_n ? std::sqrt(d) : d);
  }
  return RateFit{fit_line(x, log_neg_log), scale};
}

RateFit rate_fit(std::span<const LdpEstimate> estimates, RateScale scale) {
  std::vector<std::int64_t> n;
  std::vector<double> y;
  for (const auto& e : estimates) {
    n.push_back(e.spec.n);
    y.push_back(e.log_neg_log);
  }
  return rate_fit(n, y, scale);
}

ProbeResult concentration_probe(std::int64_t N, const IntervalSet& a, double delta, std::int64_t n,
                                const BranchingLaw& law, const RunOptions& opt) {
  if (N < 1) throw std::invalid_argument("concentration_probe needs N >= 1");
  if (opt.replicas < 1) throw std::invalid_argument("concentration_probe needs replicas >= 1");
  const IntervalSet s = lattice_scaled(a, n);
  ProbeResult out;
  out.replicas = opt.replicas;
  out.reference = nu_n_of_set(n, s);
  const double threshold = out.reference + delta;
  if (threshold < 1.0) {
    const auto hits = parallel_map(static_cast<std::size_t>(opt.replicas), opt.threads, [&](std::size_t i) -> int {
      Stream rng = Stream::derive(opt.seed, i);
      const Population pop =
          evolve_population(Population::point(0, static_cast<long double>(N)), law, n, opt.evolve, rng);
      return pop.fraction(s) > threshold ? 1 : 0;
    });
    for (int h : hits) out.events += h;
  }
  out.frequency = static_cast<double>(out.events) / static_cast<double>(out.replicas);
  return out;
}

ProbeResult typical_deviation_probe(const IntervalSet& a, double t, std::int64_t n, const BranchingLaw& law,
                                    const RunOptions& opt) {
  if (!(t > 0.0)) throw std::invalid_argument("typical_deviation_probe needs t > 0");
  if (n < 1) throw std::invalid_argument("typical_deviation_probe needs n >= 1");
  if (opt.replicas < 1) throw std::invalid_argument("typical_deviation_probe needs replicas >= 1");
  const IntervalSet s = lattice_scaled(a, n);
  ProbeResult out;
  out.replicas = opt.replicas;
  out.reference = nu(a) + t / std::sqrt(static_cast<double>(n));
  if (out.reference < 1.0) {
    const auto hits = parallel_map(static_cast<std::size_t>(opt.replicas), opt.threads, [&](std::size_t i) -> int {
      Stream rng = Stream::derive(opt.seed, i);
      const Population pop = evolve_population(Population::point(0), law, n, opt.evolve, rng);
      return pop.fraction(s) > out.reference ? 1 : 0;
    });
    for (int h : hits) out.events += h;
  }
  out.frequency = static_cast<double>(out.events) / static_cast<double>(out.replicas);
  return out;
}

DecayFit frequency_decay_fit(std::span<const std::int64_t> N, std::span<const ProbeResult> probes) {
  if (N.size() != probes.size() || N.size() < 2) throw std::invalid_argument("frequency_decay_fit: need >= 2 points");
  std::vector<double> x, y, w;
  for (std::size_t i = 0; i < N.size(); ++i) {
    const double r = static_cast<double>(probes[i].replicas);
    const double f = (static_cast<double>(probes[i].events) + 0.5) / (r + 1.0);
    x.push_back(static_cast<double>(N[i]));
    y.push_back(std::log(f));
    w.push_back(r * f / (1.0 - f));  // 1 / Var(log f) by the delta method
  }
  const LinearFit fit = fit_line_weighted(x, y, w);
  DecayFit d;
  d.slope = fit.slope;
  d.slope_se = fit.slope_se;
  d.negative_at_99 = fit.slope + 2.3263478740408408 * fit.slope_se < 0.0;
  return d;
}

}  // namespace brw

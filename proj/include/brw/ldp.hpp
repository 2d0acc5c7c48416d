#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "brw/branching_law.hpp"
#include "brw/interval_set.hpp"
#include "brw/least_squares.hpp"
#include "brw/population.hpp"
#include "brw/rates.hpp"

namespace brw {

enum class StrategyKind { shift, dilation };
std::string_view to_string(StrategyKind k) noexcept;

/// Forced prefix of s generations: minimal branching, q alternating steps
/// (dilation only), then |w| unidirectional steps, reaching b^s delta_w.
struct StrategySpec {
  StrategyKind kind = StrategyKind::shift;
  double x = 0.0;
  double r = 0.0;
  std::int64_t n = 0;
  std::int64_t w = 0;  // floor(|x| sqrt n) sgn(x), sgn(0) = +1
  std::int64_t q = 0;  // 2 floor(r n / 2)
  std::int64_t s = 0;  // q + |w|
  std::int64_t m = 0;  // n - s
};

/// Throws DomainError unless s < n.
StrategySpec shift_strategy(double x, std::int64_t n);
StrategySpec dilation_strategy(double r, double x, std::int64_t n);

/// log P(forced prefix) = log(p_b 2^-b) (b^s - 1)/(b - 1).
long double strategy_prefix_logprob(const StrategySpec& spec, const BranchingLaw& law);
/// log(-strategy_prefix_logprob), finite for any s >= 1 (-inf for s = 0).
double strategy_prefix_log_neg_logprob(const StrategySpec& spec, const BranchingLaw& law);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};
/// 95% Wilson score interval for k successes in n trials.
WilsonInterval wilson(std::int64_t k, std::int64_t n, double z = 1.959963984540054);

struct SuccessEstimate {
  double q_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  std::int64_t successes = 0;
  std::int64_t replicas = 0;
};

struct RunOptions {
  std::int64_t replicas = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  EvolveConfig evolve{};
};

/// q = P(Zbar_m(sqrt(n) A - w) >= p) for a single root, by simulation.
SuccessEstimate conditional_success_estimate(const StrategySpec& spec, const IntervalSet& a, double p,
                                             const BranchingLaw& law, const RunOptions& opt);

struct LdpEstimate {
  StrategySpec spec;
  long double log_prefix_prob = 0.0L;
  SuccessEstimate success;
  /// q used in the composition: q_hat, or the Wilson upper endpoint when
  /// there were no successes (then zero_success is set).
  double q_used = 1.0;
  bool zero_success = false;
  double log_neg_log = 0.0;  // log(-log Phat)
  double theory_rate = 0.0;
  RateScale scale = RateScale::sqrt_n;
  double relative_gap = 0.0;
};

/// -log Phat = -log_prefix + b^s (-log q), reported as log(-log Phat).
/// Throws DomainError when varphi(A, r, x) < p (strategy cannot succeed).
LdpEstimate ldp_lower_bound(const StrategySpec& spec, const IntervalSet& a, double p, const BranchingLaw& law,
                            const RunOptions& opt);

/// log(-log Phat) from its two parts, in log space.
double compose_log_neg_log(double log_neg_prefix, std::int64_t s, int b, double q);

struct RateFit {
  LinearFit fit;
  RateScale scale = RateScale::sqrt_n;
};

/// Least-squares slope of log_neg_log against sqrt(n) or n (>= 3 points).
RateFit rate_fit(std::span<const LdpEstimate> estimates, RateScale scale);
RateFit rate_fit(std::span<const std::int64_t> n, std::span<const double> log_neg_log, RateScale scale);

struct ProbeResult {
  double frequency = 0.0;
  std::int64_t events = 0;
  std::int64_t replicas = 0;
  double reference = 0.0;  // nu_n(S) or nu(A) + t/sqrt(n)
};

/// Frequency of Zbar^zeta_n(S) > nu_n(S) + delta with zeta = N delta_0 and
/// S = sqrt(n) A.
ProbeResult concentration_probe(std::int64_t N, const IntervalSet& a, double delta, std::int64_t n,
                                const BranchingLaw& law, const RunOptions& opt);

/// Frequency of Zbar_n(sqrt(n) A) > nu(A) + t/sqrt(n).
ProbeResult typical_deviation_probe(const IntervalSet& a, double t, std::int64_t n, const BranchingLaw& law,
                                    const RunOptions& opt);

struct DecayFit {
  double slope = 0.0;     // d log f / d N
  double slope_se = 0.0;  // model-based standard error
  /// slope + z_{0.99} slope_se < 0
  bool negative_at_99 = false;
};

/// Weighted fit of log((events + 1/2) / (replicas + 1)) against N.
DecayFit frequency_decay_fit(std::span<const std::int64_t> N, std::span<const ProbeResult> probes);

}  // namespace brw

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "brw/interval_set.hpp"

namespace brw {

/// sup_x nu(A - x) together with a maximizer. For sets containing a half
/// line the supremum 1 is approached at -inf or +inf and `argmax` holds that
/// sentinel (-inf when both are possible; 0 for the real line).
struct ShiftSup {
  double value = 0.0;
  double argmax = 0.0;
};

ShiftSup sup_shift_measure(const IntervalSet& a);

/// inf{|x| : nu(A - x) >= p}; `value` is +inf when the super-level set is empty.
struct ShiftRate {
  double value = kInf;
  std::optional<double> witness;
  bool near_critical = false;
};

ShiftRate i_tilde(const IntervalSet& a, double p);

/// inf{r in [0,1) : sup_x nu((A - x)/sqrt(1 - r)) >= p} with witnesses (r, x).
struct DilationRate {
  double value = 0.0;
  double r_witness = 0.0;
  double x_witness = 0.0;
  /// h(r) = sup_x varphi(A, r, x) fell back below p after the first crossing.
  bool non_monotone = false;
};

DilationRate j_tilde(const IntervalSet& a, double p);

enum class Regime { shift, dilation, degenerate };
enum class RateScale { sqrt_n, n };

std::string_view to_string(Regime r) noexcept;
std::string_view to_string(RateScale s) noexcept;

struct RateReport {
  double p = 0.0;
  int b = 2;
  double i_tilde = kInf;
  std::optional<double> x_star;
  double j_tilde = 0.0;
  double r_star = 0.0;
  double x_star_dilation = 0.0;
  double i_rate = kInf;  // log(b) * i_tilde
  double j_rate = 0.0;   // log(b) * j_tilde
  Regime regime = Regime::degenerate;
  RateScale scale = RateScale::sqrt_n;
  bool near_critical = false;
  bool non_monotone = false;

  /// Rate coefficient of log(-log P) for the regime (i_rate or j_rate).
  double rate() const noexcept { return regime == Regime::dilation ? j_rate : i_rate; }
};

/// Upper-deviation rates for P(Zbar_n(sqrt(n) A) >= p). p <= nu(A) yields the
/// degenerate regime with i_tilde = 0.
RateReport classify(const IntervalSet& a, double p, int b);

/// Lower-deviation rates for P(Zbar_n(sqrt(n) A) <= p): classify(A^c, 1 - p, b).
RateReport lower_tail_rate(const IntervalSet& a, double p, int b);

// --- interpolation family ------------------------------------------------

struct InterpolationFamily {
  double alpha = 0.75;
  double delta = 0.05;
  double a = 0.0;  // nu([-a, a]) = p
  IntervalSet a0;
  IntervalSet truncated;  // union of A_k for k0 <= k <= K
  std::vector<std::int64_t> k;
  std::vector<double> centers;  // x_k = k^(1+delta)
  std::vector<double> radii;    // r_k
};

/// x_k = k^(1+delta)
double interpolation_center(double delta, std::int64_t k);
/// r_k = sqrt(1 - k^(-(1-alpha)(1+delta)/(alpha-1/2)))
double interpolation_radius(double alpha, double delta, std::int64_t k);
/// a with 2 Phi(a) - 1 = p
double symmetric_half_width(double p);

/// A_k = x_k + r_k [-a, a] for k0 <= k <= K. Throws DomainError when two
/// consecutive A_k overlap (k0 must then be raised).
InterpolationFamily interpolation_set(double alpha, double p, double delta, std::int64_t k0,
                                      std::int64_t K);

/// Feasibility margin of the shift strategy aimed at A_k at horizon n:
/// nu(rho r_k A_0 + xi) - (p - 1/sqrt(2 pi n)), with w = floor(x_k sqrt n),
/// m = n - w, rho = sqrt(n/m), xi = (x_k sqrt n - w)/sqrt m. NaN if w >= n.
double interpolation_margin(double alpha, double p, double delta, std::int64_t k, std::int64_t n);

struct InterpolationFit {
  double alpha_hat = 0.0;
  double intercept = 0.0;
  std::vector<std::int64_t> n;
  std::vector<std::int64_t> k_opt;
  std::vector<std::int64_t> w;
  std::vector<double> cost;  // log(b) * w
  std::vector<double> residuals;
};

/// For each n the cheapest feasible shift strategy over k >= k0, then the
/// least-squares slope of log(cost) against log(n).
InterpolationFit interpolation_cost_exponent(double alpha, double p, double delta,
                                             std::int64_t k0, std::span<const std::int64_t> n_grid,
                                             int b);

}  // namespace brw

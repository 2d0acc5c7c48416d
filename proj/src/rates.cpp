#include "brw/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "brw/errors.hpp"
#include "brw/gaussian.hpp"
#include "brw/least_squares.hpp"

namespace brw {

namespace {

constexpr double kGridStep = 1e-3;
constexpr double kRootTol = 1e-9;
constexpr double kGoldenTol = 1e-8;
constexpr double kInfeasibleMargin = 1e-12;
constexpr double kSearchPad = 10.0;

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1), got " + std::to_string(p));
}

void check_nonempty(const IntervalSet& a) {
  if (a.is_empty()) throw std::invalid_argument("the set must be non-empty");
}

/// nu(A - x)
double shifted_mass(const IntervalSet& a, double x) { return nu_affine(a, 1.0, -x); }

/// Golden-section maximization of f on [lo, hi]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > kGoldenTol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

/// Shrinks [bad, good] (pred(bad) false, pred(good) true) to width kRootTol
/// and returns the feasible end.
template <class Pred>
double bisect(Pred pred, double bad, double good) {
  while (std::abs(good - bad) > kRootTol) {
    const double mid = 0.5 * (bad + good);
    if (pred(mid))
      good = mid;
    else
      bad = mid;
  }
  return good;
}

/// Smallest t in [0, t_max] with g(t) >= 0 where g(0) < 0, found on a grid of
/// step kGridStep. Grid local maxima that stay below 0 are refined so narrow
/// feasible windows between grid points are not missed.
template <class G>
std::optional<double> first_feasible(G g, double t_max, double lipschitz) {
  const auto steps = static_cast<std::int64_t>(std::ceil(t_max / kGridStep));
  auto pred = [&](double t) { return g(t) >= 0.0; };
  double g_prev2 = 0.0;
  double g_prev = g(0.0);
  for (std::int64_t i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) * kGridStep;
    const double gi = g(t);
    if (gi >= 0.0) return bisect(pred, t - kGridStep, t);
    const bool peak = (i == 1 ? g_prev >= gi : g_prev >= g_prev2 && g_prev >= gi);
    if (peak && g_prev > -lipschitz * kGridStep) {
      const double lo = i == 1 ? 0.0 : t - 2.0 * kGridStep;
      const auto [tm, gm] = golden_max(g, lo, t);
      if (gm >= 0.0) return bisect(pred, lo, tm);
    }
    g_prev2 = g_prev;
    g_prev = gi;
  }
  return std::nullopt;
}

}  // namespace

ShiftSup sup_shift_measure(const IntervalSet& a) {
  check_nonempty(a);
  if (a.is_real_line()) return {1.0, 0.0};
  if (a.has_half_line()) {
    const bool left = a.components().front().lower == -kInf;
    return {1.0, left ? -kInf : kInf};
  }
  // Outside the hull every translation toward it gains mass, so the maximizer
  // lies in [lo, hi].
  const auto [lo, hi] = a.hull();
  const auto steps = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil((hi - lo) / kGridStep)));
  const double h = (hi - lo) / static_cast<double>(steps);
  std::int64_t best = 0;
  double best_value = -1.0;
  for (std::int64_t i = 0; i <= steps; ++i) {
    const double v = shifted_mass(a, lo + static_cast<double>(i) * h);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double left = lo + static_cast<double>(std::max<std::int64_t>(best - 1, 0)) * h;
  const double right = lo + static_cast<double>(std::min(best + 1, steps)) * h;
  const auto [x, v] = golden_max([&](double t) { return shifted_mass(a, t); }, left, right);
  if (v >= best_value) return {v, x};
  return {best_value, lo + static_cast<double>(best) * h};
}

ShiftRate i_tilde(const IntervalSet& a, double p) {
  check_probability(p);
  check_nonempty(a);
  if (nu(a) >= p) return {0.0, 0.0, false};

  const ShiftSup sup = sup_shift_measure(a);
  if (sup.value < p - kInfeasibleMargin) return {kInf, std::nullopt, sup.value > p - 1e-6};

  const double t_max = a.max_abs_endpoint() + kSearchPad;
  const double lipschitz = 2.0 * static_cast<double>(a.size()) * normal_density(0.0);
  auto side = [&](double sign) {
    return first_feasible([&](double t) { return shifted_mass(a, sign * t) - p; }, t_max, lipschitz);
  };
  const auto neg = side(-1.0);
  const auto pos = side(1.0);

  ShiftRate out;
  out.near_critical = sup.value < p + 1e-9;
  if (neg && (!pos || *neg <= *pos)) {
    out.value = *neg;
    out.witness = -*neg;
  } else if (pos) {
    out.value = *pos;
    out.witness = *pos;
  } else {
    // sup within the float margin of p but no grid crossing: use the maximizer.
    if (!std::isfinite(sup.argmax)) throw NumericFailure("i_tilde: no crossing found for a half-line set");
    out.value = std::abs(sup.argmax);
    out.witness = sup.argmax;
    out.near_critical = true;
  }
  return out;
}

DilationRate j_tilde(const IntervalSet& a, double p) {
  check_probability(p);
  check_nonempty(a);
  if (a.is_real_line()) return {};
  if (a.has_half_line()) {
    const ShiftRate it = i_tilde(a, p);
    if (!it.witness) throw NumericFailure("j_tilde: half-line set without a finite shift rate");
    return {0.0, 0.0, *it.witness, false};
  }

  struct Eval {
    double value;
    double x;
  };
  auto h = [&](double r) {
    const double sigma = std::sqrt(1.0 - r);
    const ShiftSup s = sup_shift_measure(scale(a, 1.0 / sigma));
    return Eval{s.value, s.argmax * sigma};
  };

  const Eval at0 = h(0.0);
  if (at0.value >= p) return {0.0, 0.0, at0.x, false};

  std::vector<double> grid;
  for (int i = 1; i < 1000; ++i) grid.push_back(static_cast<double>(i) * kGridStep);
  for (int e = 4; e <= 9; ++e) grid.push_back(1.0 - std::pow(10.0, -e));

  DilationRate out;
  std::size_t crossing = grid.size();
  double prev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (h(grid[i]).value >= p) {
      crossing = i;
      break;
    }
    prev = grid[i];
  }
  if (crossing == grid.size())
    throw NumericFailure("j_tilde: no crossing of sup_x varphi = p for r < 1 - 1e-9");

  const double r = bisect([&](double t) { return h(t).value >= p; }, prev, grid[crossing]);
  out.value = r;
  out.r_witness = r;
  out.x_witness = h(r).x;
  for (std::size_t i = crossing + 1; i < grid.size() && grid[i] <= 0.999; ++i) {
    if (h(grid[i]).value < p) {
      out.non_monotone = true;
      break;
    }
  }
  return out;
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::shift: return "shift";
    case Regime::dilation: return "dilation";
    case Regime::degenerate: return "degenerate";
  }
  return "?";
}

std::string_view to_string(RateScale s) noexcept { return s == RateScale::sqrt_n ? "sqrt_n" : "n"; }

RateReport classify(const IntervalSet& a, double p, int b) {
  check_probability(p);
  check_nonempty(a);
  if (b < 2) throw std::invalid_argument("b must be at least 2");

  RateReport rep;
  rep.p = p;
  rep.b = b;
  const double log_b = std::log(static_cast<double>(b));
  if (p <= nu(a)) {
    rep.i_tilde = 0.0;
    rep.x_star = 0.0;
    rep.i_rate = 0.0;
    rep.regime = Regime::degenerate;
    return rep;
  }
  const ShiftRate it = i_tilde(a, p);
  const DilationRate jt = j_tilde(a, p);
  rep.i_tilde = it.value;
  rep.x_star = it.witness;
  rep.j_tilde = jt.value;
  rep.r_star = jt.r_witness;
  rep.x_star_dilation = jt.x_witness;
  rep.i_rate = std::isinf(it.value) ? kInf : log_b * it.value;
  rep.j_rate = log_b * jt.value;
  rep.near_critical = it.near_critical;
  rep.non_monotone = jt.non_monotone;
  if (std::isfinite(it.value)) {
    rep.regime = Regime::shift;
    rep.scale = RateScale::sqrt_n;
  } else {
    rep.regime = Regime::dilation;
    rep.scale = RateScale::n;
  }
  return rep;
}

RateReport lower_tail_rate(const IntervalSet& a, double p, int b) {
  if (a.is_real_line()) throw std::invalid_argument("lower_tail_rate: A must not be the real line");
  check_probability(p);
  return classify(complement(a), 1.0 - p, b);
}

// --- interpolation family ---------------------------------------------------

namespace {

void check_family(double alpha, double p, double delta) {
  if (!(alpha > 0.5 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (1/2,1)");
  check_probability(p);
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
}

}  // namespace

double interpolation_center(double delta, std::int64_t k) {
  return std::pow(static_cast<double>(k), 1.0 + delta);
}

double interpolation_radius(double alpha, double delta, std::int64_t k) {
  const double gamma = (1.0 - alpha) * (1.0 + delta) / (alpha - 0.5);
  return std::sqrt(1.0 - std::pow(static_cast<double>(k), -gamma));
}

double symmetric_half_width(double p) {
  check_probability(p);
  return phi_inverse(0.5 * (1.0 + p));
}

InterpolationFamily interpolation_set(double alpha, double p, double delta, std::int64_t k0,
                                      std::int64_t K) {
  check_family(alpha, p, delta);
  if (k0 < 2) throw std::invalid_argument("k0 must be at least 2 (A_1 has empty interior)");
  if (K < k0) throw std::invalid_argument("K must be at least k0");

  InterpolationFamily fam;
  fam.alpha = alpha;
  fam.delta = delta;
  fam.a = symmetric_half_width(p);
  fam.a0 = IntervalSet::closed(-fam.a, fam.a);
  std::vector<Interval> parts;
  for (std::int64_t k = k0; k <= K; ++k) {
    const double x = interpolation_center(delta, k);
    const double r = interpolation_radius(alpha, delta, k);
    if (!parts.empty() && parts.back().upper >= x - r * fam.a)
      throw DomainError("A_" + std::to_string(k - 1) + " and A_" + std::to_string(k) +
                        " overlap; raise k0");
    fam.k.push_back(k);
    fam.centers.push_back(x);
    fam.radii.push_back(r);
    parts.push_back({x - r * fam.a, x + r * fam.a, true, true});
  }
  fam.truncated = IntervalSet(std::move(parts));
  return fam;
}

double interpolation_margin(double alpha, double p, double delta, std::int64_t k, std::int64_t n) {
  check_family(alpha, p, delta);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double x = interpolation_center(delta, k);
  const double w = std::floor(x * sqrt_n);
  if (w >= static_cast<double>(n)) return std::numeric_limits<double>::quiet_NaN();
  const double m = static_cast<double>(n) - w;
  const double a = symmetric_half_width(p);
  const double rho = std::sqrt(static_cast<double>(n) / m) * interpolation_radius(alpha, delta, k);
  const double xi = (x * sqrt_n - w) / std::sqrt(m);
  const double slack = 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n));
  return nu_affine(IntervalSet::closed(-a, a), rho, xi) - (p - slack);
}

InterpolationFit interpolation_cost_exponent(double alpha, double p, double delta,
                                             std::int64_t k0, std::span<const std::int64_t> n_grid,
                                             int b) {
  check_family(alpha, p, delta);
  if (k0 < 2) throw std::invalid_argument("k0 must be at least 2 (A_1 has empty interior)");
  if (b < 2) throw std::invalid_argument("b must be at least 2");
  if (n_grid.size() < 2) throw std::invalid_argument("n_grid needs at least two points");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw std::invalid_argument("n_grid entries must be positive");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("n_grid must be increasing");
  }

  InterpolationFit fit;
  const double log_b = std::log(static_cast<double>(b));
  std::vector<double> lx, ly;
  for (const std::int64_t n : n_grid) {
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    std::optional<std::int64_t> found;
    for (std::int64_t k = k0;; ++k) {
      const double margin = interpolation_margin(alpha, p, delta, k, n);
      if (std::isnan(margin)) break;  // w >= n: no room left for the strategy
      if (margin >= 0.0) {
        found = k;
        break;
      }
    }
    if (!found)
      throw DomainError("interpolation: no feasible k at n = " + std::to_string(n));
    const auto w = static_cast<std::int64_t>(std::floor(interpolation_center(delta, *found) * sqrt_n));
    fit.n.push_back(n);
    fit.k_opt.push_back(*found);
    fit.w.push_back(w);
    fit.cost.push_back(log_b * static_cast<double>(w));
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(fit.cost.back()));
  }
  const LinearFit lf = fit_line(lx, ly);
  fit.alpha_hat = lf.slope;
  fit.intercept = lf.intercept;
  fit.residuals = lf.residuals;
  return fit;
}

}  // namespace brw

#include "brw/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

namespace brw {

namespace mp = boost::multiprecision;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Neumaier compensated accumulator.
template <class T>
struct CompensatedSum {
  T sum = 0;
  T carry = 0;

  void add(T v) {
    const T t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  T value() const { return sum + carry; }
};

/// nu((l, u)) for l < u, choosing the cancellation-free form.
double interval_mass(double l, double u) noexcept {
  if (l >= 0.0) return phi_upper(l) - phi_upper(u);
  if (u <= 0.0) return phi(u) - phi(l);
  const double left = l == -kInf ? 0.5 : 0.5 * std::erf(-l * kInvSqrt2);
  const double right = u == kInf ? 0.5 : 0.5 * std::erf(u * kInvSqrt2);
  return left + right;
}

double clamp01(double v) noexcept { return std::clamp(v, 0.0, 1.0); }

bool parity_matches(std::int64_t n, std::int64_t k) noexcept { return ((n - k) & 1) == 0; }

long double log_pmf(std::int64_t n, std::int64_t k) {
  const std::int64_t j = (n + k) / 2;
  const long double ln2 = std::numbers::ln2_v<long double>;
  return std::lgamma(static_cast<long double>(n) + 1.0L) -
         std::lgamma(static_cast<long double>(j) + 1.0L) -
         std::lgamma(static_cast<long double>(n - j) + 1.0L) - static_cast<long double>(n) * ln2;
}

}  // namespace

double phi(double z) noexcept {
  if (z == kInf) return 1.0;
  if (z == -kInf) return 0.0;
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

double phi_upper(double z) noexcept { return phi(-z); }

double normal_density(double z) noexcept {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double phi_inverse(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("phi_inverse needs u in (0,1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double nu(const IntervalSet& s) noexcept {
  CompensatedSum<double> acc;
  for (const auto& c : s.components()) acc.add(interval_mass(c.lower, c.upper));
  return clamp01(acc.value());
}

double nu_affine(const IntervalSet& s, double rho, double xi) {
  if (!(rho > 0.0)) throw std::invalid_argument("nu_affine needs rho > 0");
  CompensatedSum<double> acc;
  for (const auto& c : s.components()) {
    const double l = std::isinf(c.lower) ? c.lower : rho * c.lower + xi;
    const double u = std::isinf(c.upper) ? c.upper : rho * c.upper + xi;
    acc.add(interval_mass(l, u));
  }
  return clamp01(acc.value());
}

double varphi(const IntervalSet& s, double r, double x) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("varphi needs r in [0,1)");
  const double c = 1.0 / std::sqrt(1.0 - r);
  CompensatedSum<double> acc;
  for (const auto& comp : s.components()) {
    const double l = std::isinf(comp.lower) ? comp.lower : (comp.lower - x) * c;
    const double u = std::isinf(comp.upper) ? comp.upper : (comp.upper - x) * c;
    acc.add(interval_mass(l, u));
  }
  return clamp01(acc.value());
}

double srw_pmf(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("srw_pmf needs n >= 0");
  if (k < -n || k > n || !parity_matches(n, k)) return 0.0;
  return static_cast<double>(std::exp(log_pmf(n, k)));
}

mp::cpp_rational srw_pmf_exact(std::int64_t n, std::int64_t k) {
  if (n < 0 || n > 64) throw std::invalid_argument("srw_pmf_exact supports 0 <= n <= 64");
  if (k < -n || k > n || !parity_matches(n, k)) return 0;
  const std::int64_t j = (n + k) / 2;
  mp::cpp_int c = 1;
  for (std::int64_t i = 1; i <= j; ++i) c = c * (n - j + i) / i;
  mp::cpp_int den = 1;
  den <<= static_cast<unsigned>(n);
  return mp::cpp_rational(c, den);
}

double nu_n_of_set(std::int64_t n, const IntervalSet& s) {
  if (n < 0) throw std::invalid_argument("nu_n_of_set needs n >= 0");
  CompensatedSum<long double> acc;
  for (const auto& c : s.components()) {
    const LatticeRange r = lattice_points(c, -n, n);
    if (r.empty()) continue;
    std::int64_t k = parity_matches(n, r.first) ? r.first : r.first + 1;
    for (; k <= r.last; k += 2) acc.add(std::exp(log_pmf(n, k)));
  }
  return clamp01(static_cast<double>(acc.value()));
}

// --- SrwLaw ----------------------------------------------------------------

SrwLaw::SrwLaw(std::int64_t n) : n_(n) {
  if (n < 0) throw std::invalid_argument("SrwLaw needs n >= 0");
  pmf_.resize(static_cast<std::size_t>(n) + 1);
  prefix_.resize(pmf_.size() + 1);
  CompensatedSum<long double> acc;
  prefix_[0] = 0.0L;
  for (std::int64_t j = 0; j <= n; ++j) {
    pmf_[static_cast<std::size_t>(j)] = std::exp(log_pmf(n, 2 * j - n));
    acc.add(pmf_[static_cast<std::size_t>(j)]);
    prefix_[static_cast<std::size_t>(j) + 1] = acc.value();
  }
}

double SrwLaw::pmf(std::int64_t k) const noexcept {
  if (k < -n_ || k > n_ || !parity_matches(n_, k)) return 0.0;
  return static_cast<double>(pmf_[static_cast<std::size_t>((k + n_) / 2)]);
}

double SrwLaw::mass(std::int64_t first, std::int64_t last) const noexcept {
  first = std::max(first, -n_);
  last = std::min(last, n_);
  if (!parity_matches(n_, first)) ++first;
  if (!parity_matches(n_, last)) --last;
  if (first > last) return 0.0;
  const auto j1 = static_cast<std::size_t>((first + n_) / 2);
  const auto j2 = static_cast<std::size_t>((last + n_) / 2);
  return static_cast<double>(prefix_[j2 + 1] - prefix_[j1]);
}

double SrwLaw::mass(const IntervalSet& s) const {
  double total = 0.0;
  for (const auto& c : s.components()) {
    const LatticeRange r = lattice_points(c, -n_, n_);
    if (!r.empty()) total += mass(r.first, r.last);
  }
  return clamp01(total);
}

// --- CLT uniformity ----------------------------------------------------------

CltScanResult clt_uniformity_scan(const IntervalSet& s, double R, std::int64_t n, int rho_points) {
  if (n < 1) throw std::invalid_argument("clt_uniformity_scan needs n >= 1");
  if (!(R > 1.0)) throw std::invalid_argument("clt_uniformity_scan needs R > 1");
  if (rho_points < 1) throw std::invalid_argument("rho_points must be positive");
  if (rho_points % 2 == 0) ++rho_points;

  CltScanResult out;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const auto J = static_cast<std::int64_t>(std::ceil((R * s.max_abs_endpoint() + 10.0) * sqrt_n));
  out.xi_radius = static_cast<double>(J) / sqrt_n;
  if (s.is_empty() || s.is_real_line()) return out;

  const SrwLaw law(n);
  const int half = (rho_points - 1) / 2;
  for (int i = 0; i < rho_points; ++i) {
    const double rho = half == 0 ? 1.0 : std::pow(R, static_cast<double>(i - half) / half);
    const double lattice_scale = rho * sqrt_n;
    for (std::int64_t j = -J; j <= J; ++j) {
      const double xi = static_cast<double>(j) / sqrt_n;
      double lattice = 0.0;
      double gauss = 0.0;
      for (const auto& c : s.components()) {
        Interval t = c;
        if (!std::isinf(c.lower)) t.lower = c.lower * lattice_scale + static_cast<double>(j);
        if (!std::isinf(c.upper)) t.upper = c.upper * lattice_scale + static_cast<double>(j);
        const LatticeRange r = lattice_points(t, -n, n);
        if (!r.empty()) lattice += law.mass(r.first, r.last);
        const double l = std::isinf(c.lower) ? c.lower : rho * c.lower + xi;
        const double u = std::isinf(c.upper) ? c.upper : rho * c.upper + xi;
        gauss += interval_mass(l, u);
      }
      ++out.evaluations;
      const double err = std::abs(lattice - gauss);
      if (err > out.sup_error) {
        out.sup_error = err;
        out.rho_at = rho;
        out.xi_at = xi;
      }
    }
  }
  return out;
}

}  // namespace brw

#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "brw/interval_set.hpp"

namespace brw {

/// Standard normal CDF, evaluated as erfc(-z/sqrt 2)/2 so both tails keep
/// full relative precision. Accepts +-inf.
double phi(double z) noexcept;
/// Upper tail 1 - phi(z), computed directly.
double phi_upper(double z) noexcept;
double normal_density(double z) noexcept;

/// Inverse of the standard normal CDF, u in (0, 1).
double phi_inverse(double u);

/// Standard Gaussian measure of S.
double nu(const IntervalSet& s) noexcept;
/// nu(rho S + xi), rho > 0.
double nu_affine(const IntervalSet& s, double rho, double xi);
/// nu((S - x) / sqrt(1 - r)), r in [0, 1).
double varphi(const IntervalSet& s, double r, double x);

/// P(S_n = k) for a +-1 simple random walk started at 0.
double srw_pmf(std::int64_t n, std::int64_t k);
/// Exact rational P(S_n = k) for n <= 64.
boost::multiprecision::cpp_rational srw_pmf_exact(std::int64_t n, std::int64_t k);

/// nu_n(S): exact lattice sum of srw_pmf over the integer points of S.
double nu_n_of_set(std::int64_t n, const IntervalSet& s);

/// One row of the n-step walk law with prefix sums, for repeated lattice
/// queries against the same n.
class SrwLaw {
 public:
  explicit SrwLaw(std::int64_t n);

  std::int64_t steps() const noexcept { return n_; }
  double pmf(std::int64_t k) const noexcept;
  /// nu_n(S) via prefix sums.
  double mass(const IntervalSet& s) const;
  /// nu_n of the lattice points in [first, last].
  double mass(std::int64_t first, std::int64_t last) const noexcept;

 private:
  std::int64_t n_;
  std::vector<long double> pmf_;     // index j <-> k = 2j - n
  std::vector<long double> prefix_;  // prefix_[j] = sum_{i<j} pmf_[i]
};

struct CltScanResult {
  double sup_error = 0.0;
  double rho_at = 1.0;
  double xi_at = 0.0;
  double xi_radius = 0.0;  // |xi| range covered by the grid
  std::int64_t evaluations = 0;
};

/// max over a (rho, xi) grid of |nu_n(sqrt(n)(rho S + xi)) - nu(rho S + xi)|.
/// rho runs geometrically over [1/R, R] (`rho_points` odd, so rho = 1 is on
/// the grid); xi = j / sqrt(n) for |j| <= ceil((R B + 10) sqrt(n)), with B the
/// largest finite |endpoint|. xi enters the lattice set as the integer shift j.
CltScanResult clt_uniformity_scan(const IntervalSet& s, double R, std::int64_t n,
                                  int rho_points = 41);

}  // namespace brw

#include <doctest.h>

#include <cmath>
#include <random>

#include "brw/gaussian.hpp"
#include "oracles.hpp"

using namespace brw;
using doctest::Approx;

namespace {

IntervalSet P(const char* s) { return parse_interval_set(s); }

}  // namespace

TEST_CASE("phi against the high-precision oracle") {
  CHECK(phi(0.0) == 0.5);
  CHECK(phi(kInf) == 1.0);
  CHECK(phi(-kInf) == 0.0);
  for (double z : {1.96, -1.96, 0.3, -3.7, 5.5, -8.0, -20.0, -37.0}) {
    const double ref = oracle::phi_hp(z).convert_to<double>();
    CHECK(std::abs(phi(z) - ref) <= (z > -10 ? 5e-14 : 1e-12) * ref);
  }
  CHECK(phi(1.96) == Approx(0.9750021048517795).epsilon(1e-15));
  CHECK(phi(-8.0) == Approx(6.22096057427178e-16).epsilon(1e-13));
}

TEST_CASE("phi_upper keeps relative precision in the right tail") {
  for (double z : {2.0, 8.0, 15.0}) {
    const double ref = (1 - oracle::phi_hp(z)).convert_to<double>();
    CHECK(phi_upper(z) == Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("phi_inverse inverts phi") {
  for (double u : {1e-12, 0.01, 0.2, 0.5, 0.8, 0.975, 1 - 1e-9}) CHECK(phi(phi_inverse(u)) == Approx(u).epsilon(1e-12));
  CHECK(phi_inverse(0.8) == Approx(0.8416212335729143).epsilon(1e-14));
  CHECK_THROWS(phi_inverse(0.0));
  CHECK_THROWS(phi_inverse(1.0));
}

TEST_CASE("nu examples") {
  CHECK(nu(P("(-inf,0]")) == 0.5);
  CHECK(nu(P("[-1.96,1.96]")) == Approx(0.9500042097035591).epsilon(1e-14));
  CHECK(nu(IntervalSet::real_line()) == 1.0);
  CHECK(nu(IntervalSet::empty()) == 0.0);
}

TEST_CASE("nu matches the oracle and is additive over random sets") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const IntervalSet s = oracle::random_set(rng);
    CHECK(std::abs(nu(s) - oracle::nu_hp(s)) < 1e-14);
    CHECK(nu(s) + nu(complement(s)) == Approx(1.0).epsilon(1e-14));
    // split s at 0 into disjoint halves
    const IntervalSet left = intersect(s, P("(-inf,0]"));
    const IntervalSet right = intersect(s, P("(0,inf)"));
    CHECK(std::abs(nu(left) + nu(right) - nu(s)) < 1e-13);
  }
}

TEST_CASE("nu_affine and varphi") {
  CHECK(nu_affine(P("(-inf,0]"), 1, 0) == 0.5);
  CHECK(nu_affine(P("[-1,1]"), 2, 0) == Approx(nu(P("[-2,2]"))).epsilon(1e-15));
  CHECK(varphi(P("[-1,1]"), 0.75, 0) == Approx(nu(P("[-2,2]"))).epsilon(1e-15));

  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> ur(0.0, 0.99), ux(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const double r = ur(rng), x = ux(rng);
    CHECK(varphi(P("(-inf,0]"), r, x) == Approx(phi(-x / std::sqrt(1 - r))).epsilon(1e-13));
    const IntervalSet s = oracle::random_set(rng);
    CHECK(varphi(s, 0, 0) == Approx(nu(s)).epsilon(1e-15));
    CHECK(std::abs(varphi(s, r, x) - nu_affine(shift(s, -x), 1 / std::sqrt(1 - r), 0)) < 1e-13);
    CHECK(std::abs(varphi(s, r, x) - oracle::nu_scaled(s, x, std::sqrt(1 - r))) < 1e-13);
  }
  CHECK_THROWS(varphi(P("[0,1]"), 1.0, 0));
}

TEST_CASE("d/dxi of nu_affine matches a centered finite difference") {
  const IntervalSet a = P("[0,1]");
  const double h = 1e-5;
  const double fd = (nu_affine(a, 1, h) - nu_affine(a, 1, -h)) / (2 * h);
  CHECK(std::abs(fd - (normal_density(1) - normal_density(0))) < 1e-6);
}

TEST_CASE("srw_pmf examples and exact agreement") {
  CHECK(srw_pmf(1, 1) == 0.5);
  CHECK(srw_pmf(3, 0) == 0.0);
  CHECK(srw_pmf(2, 0) == Approx(0.5).epsilon(1e-15));
  CHECK(srw_pmf(5, 7) == 0.0);
  for (std::int64_t n : {1, 7, 20, 64})
    for (std::int64_t k = -n; k <= n; ++k) {
      const double ref = oracle::srw_exact(n, k).convert_to<double>();
      CHECK(srw_pmf(n, k) == Approx(ref).epsilon(1e-13));
      CHECK(srw_pmf_exact(n, k) == oracle::srw_exact(n, k));
    }
}

TEST_CASE("srw_pmf rows sum to one") {
  for (std::int64_t n : {1, 10, 100, 1000, 10000}) {
    long double total = 0;
    for (std::int64_t k = -n; k <= n; ++k) total += srw_pmf(n, k);
    CHECK(std::abs(static_cast<double>(total) - 1.0) < 1e-12);
  }
}

TEST_CASE("nu_n_of_set examples and symmetry") {
  CHECK(nu_n_of_set(2, P("(-inf,0]")) == Approx(0.75).epsilon(1e-15));
  CHECK(nu_n_of_set(37, IntervalSet::real_line()) == Approx(1.0).epsilon(1e-14));
  CHECK(nu_n_of_set(4, P("(0,inf)")) == Approx(nu_n_of_set(4, P("(-inf,0)"))).epsilon(1e-15));
  CHECK(nu_n_of_set(4, P("[0,inf)")) == Approx(0.6875).epsilon(1e-15));

  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const IntervalSet s = scale(oracle::random_set(rng), 3.0);
    for (std::int64_t n : {5, 16}) {
      CHECK(nu_n_of_set(n, s) == Approx(nu_n_of_set(n, mirror(s))).epsilon(1e-13));
      boost::multiprecision::cpp_rational ref = 0;
      for (std::int64_t k = -n; k <= n; ++k)
        if (s.contains(static_cast<double>(k))) ref += oracle::srw_exact(n, k);
      CHECK(std::abs(nu_n_of_set(n, s) - ref.convert_to<double>()) < 1e-14);
      CHECK(std::abs(SrwLaw(n).mass(s) - nu_n_of_set(n, s)) < 1e-14);
    }
  }
}

TEST_CASE("clt scan examples") {
  const IntervalSet a = P("(-inf,0]");
  for (std::int64_t n : {25, 100, 400}) {
    const auto scan = clt_uniformity_scan(a, 2.0, n);
    CHECK(scan.sup_error >= std::abs(nu_n_of_set(n, lattice_scaled(a, n)) - 0.5));
  }
  CHECK(clt_uniformity_scan(IntervalSet::real_line(), 2.0, 100).sup_error == 0.0);
  CHECK(clt_uniformity_scan(IntervalSet::empty(), 2.0, 100).sup_error == 0.0);
}

TEST_CASE("clt scan is non-increasing along n for a small suite") {
  for (const char* s : {"(-inf,0]", "[-1,1]", "[0.5,2) U (3,inf)", "(-inf,-1] U [1,inf)"}) {
    const IntervalSet a = P(s);
    const double e25 = clt_uniformity_scan(a, 2.0, 25).sup_error;
    const double e100 = clt_uniformity_scan(a, 2.0, 100).sup_error;
    const double e400 = clt_uniformity_scan(a, 2.0, 400).sup_error;
    CAPTURE(s);
    CHECK(e100 <= e25);
    CHECK(e400 <= e100);
  }
}

TEST_CASE("clt scan value at rho = 1, xi = 0 is attained on the grid") {
  // Direct evaluation of the grid point rho = 1, xi = 0 with the oracle pmf.
  const IntervalSet a = P("[-0.3,0.7)");
  const std::int64_t n = 36;
  boost::multiprecision::cpp_rational lattice = 0;
  const IntervalSet sc = lattice_scaled(a, n);
  for (std::int64_t k = -n; k <= n; ++k)
    if (sc.contains(static_cast<double>(k))) lattice += oracle::srw_exact(n, k);
  const double err = std::abs(lattice.convert_to<double>() - oracle::nu_hp(a));
  CHECK(clt_uniformity_scan(a, 2.0, n).sup_error >= err - 1e-15);
}

#include "brw/enumerate.hpp"

#include <cmath>
#include <string>

#include "brw/errors.hpp"

namespace brw {

namespace {

using SplitKey = std::pair<std::int64_t, std::int64_t>;  // (left, right)
using SplitDistribution = std::map<SplitKey, Rational>;

Rational binomial(std::int64_t k, std::int64_t j) {
  boost::multiprecision::cpp_int r = 1;
  for (std::int64_t i = 1; i <= j; ++i) r = r * (k - j + i) / i;
  return Rational(r);
}

// Outcome of one particle: (children stepping left, children stepping right).
SplitDistribution single_particle(const BranchingLaw& law) {
  SplitDistribution d;
  for (const auto& [k, q] : law.pmf()) {
    const Rational pk = exact_probability(q) / Rational(boost::multiprecision::cpp_int(1) << k);
    for (std::int64_t j = 0; j <= k; ++j) d[{j, k - j}] += pk * binomial(k, j);
  }
  return d;
}

SplitDistribution convolve(const SplitDistribution& a, const SplitDistribution& b) {
  SplitDistribution out;
  for (const auto& [ka, pa] : a)
    for (const auto& [kb, pb] : b) out[{ka.first + kb.first, ka.second + kb.second}] += pa * pb;
  return out;
}

MeasureDistribution step(const MeasureDistribution& dist, const BranchingLaw& law) {
  const SplitDistribution one = single_particle(law);
  std::map<std::int64_t, SplitDistribution> power{{1, one}};
  auto power_of = [&](std::int64_t c) -> const SplitDistribution& {
    auto it = power.find(c);
    if (it != power.end()) return it->second;
    SplitDistribution acc = one;
    for (std::int64_t i = 2; i <= c; ++i) acc = convolve(acc, one);
    return power.emplace(c, std::move(acc)).first->second;
  };

  MeasureDistribution out;
  for (const auto& [key, prob] : dist) {
    // Partial products over positions processed so far.
    std::map<std::map<std::int64_t, std::int64_t>, Rational> partial{{{}, prob}};
    for (const auto& [x, c] : key) {
      const SplitDistribution& site = power_of(c);
      std::map<std::map<std::int64_t, std::int64_t>, Rational> next;
      for (const auto& [m, pm] : partial) {
        for (const auto& [lr, ps] : site) {
          auto m2 = m;
          if (lr.first) m2[x - 1] += lr.first;
          if (lr.second) m2[x + 1] += lr.second;
          next[std::move(m2)] += pm * ps;
        }
      }
      partial = std::move(next);
    }
    for (auto& [m, pm] : partial) out[MeasureKey(m.begin(), m.end())] += pm;
  }
  return out;
}

}  // namespace

Rational exact_probability(double q) {
  int exp = 0;
  const double frac = std::frexp(q, &exp);
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  Rational r(mant);
  const int shift = exp - 53;
  boost::multiprecision::cpp_int pow2 = boost::multiprecision::cpp_int(1) << std::abs(shift);
  return shift >= 0 ? r * Rational(pow2) : r / Rational(pow2);
}

MeasureKey to_key(const ParticleMeasure& zeta) {
  MeasureKey key;
  for (const auto& [x, c] : zeta.counts()) key.emplace_back(x, c.convert_to<std::int64_t>());
  return key;
}

double enumeration_size(std::int64_t n, const BranchingLaw& law, const ParticleMeasure& zeta0) {
  double outcomes = 0.0;
  for (const auto& [k, q] : law.pmf()) outcomes += k + 1;
  double particles = zeta0.total().convert_to<double>();
  double log_size = 0.0;
  for (std::int64_t g = 0; g < n; ++g) {
    log_size += particles * std::log(outcomes);
    particles *= law.max_offspring();
  }
  return std::exp(log_size);
}

MeasureDistribution enumerate_distribution(std::int64_t n, const BranchingLaw& law, const ParticleMeasure& zeta0) {
  if (n < 0) throw std::invalid_argument("number of generations must be non-negative");
  if (zeta0.empty()) throw std::invalid_argument("cannot enumerate from an empty particle measure");
  const double size = enumeration_size(n, law, zeta0);
  if (!(size <= kEnumerationLimit))
    throw DomainError("enumeration size " + std::to_string(size) + " exceeds the limit of 1e8 configurations");
  MeasureDistribution dist{{to_key(zeta0), Rational(1)}};
  for (std::int64_t g = 0; g < n; ++g) dist = step(dist, law);
  return dist;
}

Rational enumerate_exact(std::int64_t n, const BranchingLaw& law, const IntervalSet& a, double p,
                         const ParticleMeasure& zeta0) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const IntervalSet scaled = lattice_scaled(a, n);
  Rational total_prob = 0;
  for (const auto& [key, prob] : enumerate_distribution(n, law, zeta0)) {
    std::int64_t total = 0;
    std::int64_t inside = 0;
    for (const auto& [x, c] : key) {
      total += c;
      if (scaled.contains(static_cast<double>(x))) inside += c;
    }
    // Same rounding as the simulator's fraction, so "p = 0.4" admits 2/5.
    if (static_cast<double>(inside) / static_cast<double>(total) >= p) total_prob += prob;
  }
  return total_prob;
}

Rational enumerate_measure_probability(std::int64_t n, const BranchingLaw& law, const ParticleMeasure& target,
                                       const ParticleMeasure& zeta0) {
  const auto dist = enumerate_distribution(n, law, zeta0);
  const auto it = dist.find(to_key(target));
  return it == dist.end() ? Rational(0) : it->second;
}

}  // namespace brw

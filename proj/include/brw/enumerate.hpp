#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "brw/branching_law.hpp"
#include "brw/interval_set.hpp"
#include "brw/particle_measure.hpp"

namespace brw {

using Rational = boost::multiprecision::cpp_rational;

/// Sorted (position, count) pairs with positive counts.
using MeasureKey = std::vector<std::pair<std::int64_t, std::int64_t>>;
using MeasureDistribution = std::map<MeasureKey, Rational>;

/// Law probabilities are taken as the exact binary values of the doubles.
Rational exact_probability(double q);

/// Upper bound on the number of per-particle outcome configurations visited
/// by a naive enumeration of n generations from zeta0; enumerate_* refuse
/// when it exceeds kEnumerationLimit.
double enumeration_size(std::int64_t n, const BranchingLaw& law, const ParticleMeasure& zeta0);
inline constexpr double kEnumerationLimit = 1e8;

/// Exact law of Z_n started from zeta0. Throws DomainError past the limit.
MeasureDistribution enumerate_distribution(std::int64_t n, const BranchingLaw& law,
                                           const ParticleMeasure& zeta0 = ParticleMeasure::point(0));

/// P(Zbar_n(sqrt(n) A) >= p), exactly. The fraction is rounded to double
/// before the comparison, as in the simulator.
Rational enumerate_exact(std::int64_t n, const BranchingLaw& law, const IntervalSet& a, double p,
                         const ParticleMeasure& zeta0 = ParticleMeasure::point(0));

/// P(Z_n = target), exactly.
Rational enumerate_measure_probability(std::int64_t n, const BranchingLaw& law, const ParticleMeasure& target,
                                       const ParticleMeasure& zeta0 = ParticleMeasure::point(0));

MeasureKey to_key(const ParticleMeasure& zeta);

}  // namespace brw

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "brw/interval_set.hpp"

namespace brw {

using Count = boost::multiprecision::cpp_int;

/// Finite point measure on the integer lattice with integer masses (Z_n).
class ParticleMeasure {
 public:
  ParticleMeasure() = default;
  ParticleMeasure(std::map<std::int64_t, Count> counts, std::int64_t generation);

  /// count * delta_position
  static ParticleMeasure point(std::int64_t position, Count count = 1, std::int64_t generation = 0);

  const std::map<std::int64_t, Count>& counts() const noexcept { return counts_; }
  std::int64_t generation() const noexcept { return generation_; }
  Count count(std::int64_t position) const;
  Count total() const;
  bool empty() const noexcept { return counts_.empty(); }
  std::int64_t min_position() const;
  std::int64_t max_position() const;

  /// Mass of the lattice points of S (S is already in lattice coordinates).
  Count mass(const IntervalSet& s) const;
  /// mass(S) / total
  double fraction(const IntervalSet& s) const;

  bool operator==(const ParticleMeasure&) const = default;

 private:
  std::map<std::int64_t, Count> counts_;  // zero counts are never stored
  std::int64_t generation_ = 0;
};

/// Z_n(sqrt(n) A) / |Z_n|. Throws std::invalid_argument for an empty measure.
double empirical_fraction(const ParticleMeasure& zeta, std::int64_t n, const IntervalSet& a);

/// Snapshot text format: a "# generation=<g>" comment, then "position count"
/// lines in increasing position order.
void write_snapshot(std::ostream& os, const ParticleMeasure& zeta);
ParticleMeasure read_snapshot(std::istream& is);

}  // namespace brw

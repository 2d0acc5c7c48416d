#include "brw/particle_measure.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "brw/errors.hpp"

namespace brw {

ParticleMeasure::ParticleMeasure(std::map<std::int64_t, Count> counts, std::int64_t generation)
    : generation_(generation) {
  if (generation < 0) throw std::invalid_argument("generation must be non-negative");
  for (auto& [x, c] : counts) {
    if (c < 0) throw std::invalid_argument("particle counts must be non-negative");
    if (c != 0) counts_.emplace(x, std::move(c));
  }
}

ParticleMeasure ParticleMeasure::point(std::int64_t position, Count count, std::int64_t generation) {
  std::map<std::int64_t, Count> m;
  m.emplace(position, std::move(count));
  return ParticleMeasure(std::move(m), generation);
}

Count ParticleMeasure::count(std::int64_t position) const {
  const auto it = counts_.find(position);
  return it == counts_.end() ? Count(0) : it->second;
}

Count ParticleMeasure::total() const {
  Count t = 0;
  for (const auto& [x, c] : counts_) t += c;
  return t;
}

std::int64_t ParticleMeasure::min_position() const {
  if (counts_.empty()) throw std::invalid_argument("empty particle measure");
  return counts_.begin()->first;
}

std::int64_t ParticleMeasure::max_position() const {
  if (counts_.empty()) throw std::invalid_argument("empty particle measure");
  return counts_.rbegin()->first;
}

Count ParticleMeasure::mass(const IntervalSet& s) const {
  Count m = 0;
  if (counts_.empty()) return m;
  const std::int64_t lo = min_position();
  const std::int64_t hi = max_position();
  for (const auto& comp : s.components()) {
    const LatticeRange r = lattice_points(comp, lo, hi);
    if (r.empty()) continue;
    for (auto it = counts_.lower_bound(r.first); it != counts_.end() && it->first <= r.last; ++it)
      m += it->second;
  }
  return m;
}

double ParticleMeasure::fraction(const IntervalSet& s) const {
  const Count t = total();
  if (t == 0) throw std::invalid_argument("fraction of an empty particle measure");
  // Ratio of two big integers; long double keeps 64 bits of each.
  const long double num = mass(s).convert_to<long double>();
  const long double den = t.convert_to<long double>();
  return static_cast<double>(num / den);
}

double empirical_fraction(const ParticleMeasure& zeta, std::int64_t n, const IntervalSet& a) {
  if (zeta.empty()) throw std::invalid_argument("empirical_fraction of an empty particle measure");
  return zeta.fraction(lattice_scaled(a, n));
}

void write_snapshot(std::ostream& os, const ParticleMeasure& zeta) {
  os << "# generation=" << zeta.generation() << '\n';
  for (const auto& [x, c] : zeta.counts()) os << x << ' ' << c << '\n';
}

ParticleMeasure read_snapshot(std::istream& is) {
  std::map<std::int64_t, Count> counts;
  std::int64_t generation = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto pos = line.find("generation=");
      if (pos != std::string::npos) generation = std::stoll(line.substr(pos + 11));
      continue;
    }
    std::istringstream ls(line);
    std::int64_t x = 0;
    std::string c;
    if (!(ls >> x >> c)) throw ParseError("expected 'position count' on line " + std::to_string(line_no), 1);
    Count value;
    try {
      value = Count(c);
    } catch (const std::exception&) {
      throw ParseError("invalid count on line " + std::to_string(line_no), 1);
    }
    counts[x] += value;
  }
  return ParticleMeasure(std::move(counts), generation);
}

}  // namespace brw

#include "brw/population.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "brw/errors.hpp"

namespace brw {

namespace {

Count to_count(long double v) {
  if (v < 0x1p63L) return Count(static_cast<std::int64_t>(v));
  int exp = 0;
  const long double frac = std::frexp(v, &exp);  // v = frac * 2^exp, frac in [1/2, 1)
  const auto mant = static_cast<std::uint64_t>(std::ldexp(frac, 64));
  Count c(mant);
  c <<= static_cast<unsigned>(exp - 64);
  return c;
}

// Sum of c iid offspring counts, c small.
long double offspring_iid(const BranchingLaw& law, std::uint64_t c, Stream& rng) {
  if (law.is_deterministic()) return static_cast<long double>(c) * law.b();
  std::uint64_t t = 0;
  for (std::uint64_t i = 0; i < c; ++i) t += static_cast<std::uint64_t>(law.sample(rng));
  return static_cast<long double>(t);
}

// sum_k k M_k with M ~ Multinomial(c, pmf), by sequential conditional binomials.
long double offspring_multinomial(const BranchingLaw& law, std::int64_t c, Stream& rng) {
  if (law.is_deterministic()) return static_cast<long double>(c) * law.b();
  long double t = 0.0L;
  std::int64_t remaining = c;
  double mass_left = 1.0;
  const auto& pmf = law.pmf();
  std::size_t i = 0;
  for (const auto& [k, q] : pmf) {
    if (remaining == 0) break;
    std::int64_t m = remaining;
    if (++i < pmf.size()) {
      const double prob = std::clamp(q / mass_left, 0.0, 1.0);
      std::binomial_distribution<std::int64_t> bin(remaining, prob);
      m = bin(rng);
      mass_left -= q;
    }
    t += static_cast<long double>(m) * k;
    remaining -= m;
  }
  return t;
}

long double offspring_normal(const BranchingLaw& law, long double c, Stream& rng) {
  const long double lo = c * law.b();
  const long double hi = c * law.max_offspring();
  if (law.is_deterministic()) return lo;
  std::normal_distribution<double> gauss;
  const long double z = gauss(rng);
  const long double t = std::nearbyint(c * law.mean() + std::sqrt(c * law.variance()) * z);
  return std::clamp(t, lo, hi);
}

// Number of the t children stepping left. Returns left; right = t - left is
// exact in both branches.
long double split_left(long double t, long double exact_max, Stream& rng) {
  if (t <= exact_max) {
    std::binomial_distribution<std::int64_t> bin(static_cast<std::int64_t>(t), 0.5);
    return static_cast<long double>(bin(rng));
  }
  std::normal_distribution<double> gauss;
  const long double z = gauss(rng);
  long double left = std::clamp(std::nearbyint(t / 2 + std::sqrt(t) / 2 * z), 0.0L, t);
  // Make left the exact difference of representable values so that
  // left + (t - left) == t holds in floating point.
  if (left < t / 2) left = t - (t - left);
  return left;
}

}  // namespace

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::exact: return "exact";
    case Mode::aggregated: return "aggregated";
    case Mode::hybrid: return "hybrid";
  }
  return "hybrid";
}

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "aggregated") return Mode::aggregated;
  if (text == "hybrid") return Mode::hybrid;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

Population::Population(const ParticleMeasure& zeta) : generation_(zeta.generation()) {
  if (zeta.empty()) return;
  offset_ = zeta.min_position();
  counts_.assign(static_cast<std::size_t>(zeta.max_position() - offset_ + 1), 0.0L);
  for (const auto& [x, c] : zeta.counts())
    counts_[static_cast<std::size_t>(x - offset_)] = c.convert_to<long double>();
  refresh_total();
}

Population Population::point(std::int64_t position, long double count, std::int64_t generation) {
  Population p;
  p.offset_ = position;
  p.counts_.assign(1, count);
  p.generation_ = generation;
  p.total_ = count;
  return p;
}

ParticleMeasure Population::to_measure() const {
  std::map<std::int64_t, Count> m;
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] > 0) m.emplace(offset_ + static_cast<std::int64_t>(i), to_count(counts_[i]));
  return ParticleMeasure(std::move(m), generation_);
}

long double Population::count(std::int64_t position) const noexcept {
  if (counts_.empty() || position < offset_ || position > max_position()) return 0.0L;
  return counts_[static_cast<std::size_t>(position - offset_)];
}

long double Population::mass(const IntervalSet& s) const {
  if (counts_.empty()) return 0.0L;
  long double m = 0.0L;
  for (const auto& comp : s.components()) {
    const LatticeRange r = lattice_points(comp, min_position(), max_position());
    if (r.empty()) continue;
    for (std::int64_t x = r.first; x <= r.last; ++x) m += counts_[static_cast<std::size_t>(x - offset_)];
  }
  return m;
}

double Population::fraction(const IntervalSet& s) const {
  if (empty()) throw std::invalid_argument("fraction of an empty population");
  return static_cast<double>(std::min(1.0L, mass(s) / total_));
}

double Population::mean_position() const {
  if (empty()) throw std::invalid_argument("mean position of an empty population");
  long double m = 0.0L;
  for (std::size_t i = 0; i < counts_.size(); ++i)
    m += counts_[i] * static_cast<long double>(offset_ + static_cast<std::int64_t>(i));
  return static_cast<double>(m / total_);
}

void Population::refresh_total() {
  total_ = 0.0L;
  for (long double c : counts_) total_ += c;
  if (!std::isfinite(total_)) throw NumericFailure("population total overflowed extended precision");
}

void Population::step_exact(const BranchingLaw& law, Stream& rng, std::uint64_t cap) {
  if (total_ > static_cast<long double>(cap))
    throw CapExceeded("exact step refused: " + std::to_string(static_cast<double>(total_)) +
                      " particles exceed cap " + std::to_string(cap));
  std::vector<long double> next(counts_.size() + 2, 0.0L);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const auto c = static_cast<std::uint64_t>(counts_[i]);
    std::uint64_t left = 0;
    std::uint64_t total = 0;
    for (std::uint64_t j = 0; j < c; ++j) {
      int k = law.sample(rng);
      total += static_cast<std::uint64_t>(k);
      while (k > 0) {
        const int take = std::min(k, 64);
        std::uint64_t bits = rng();
        if (take < 64) bits &= (std::uint64_t{1} << take) - 1;
        left += static_cast<std::uint64_t>(std::popcount(bits));
        k -= take;
      }
    }
    next[i] += static_cast<long double>(left);
    next[i + 2] += static_cast<long double>(total - left);
  }
  counts_ = std::move(next);
  offset_ -= 1;
  ++generation_;
  refresh_total();
}

void Population::step_aggregated(const BranchingLaw& law, Stream& rng, const AggregationThresholds& t) {
  std::vector<long double> next(counts_.size() + 2, 0.0L);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const long double c = counts_[i];
    if (c <= 0) continue;
    long double children;
    if (c <= static_cast<long double>(t.iid_max))
      children = offspring_iid(law, static_cast<std::uint64_t>(c), rng);
    else if (c <= t.multinomial_max)
      children = offspring_multinomial(law, static_cast<std::int64_t>(c), rng);
    else
      children = offspring_normal(law, c, rng);
    const long double left = split_left(children, t.exact_split_max, rng);
    next[i] += left;
    next[i + 2] += children - left;
  }
  counts_ = std::move(next);
  offset_ -= 1;
  ++generation_;
  refresh_total();
}

void Population::step(const BranchingLaw& law, Stream& rng, const EvolveConfig& cfg) {
  switch (cfg.mode) {
    case Mode::exact: step_exact(law, rng, cfg.cap); return;
    case Mode::aggregated: step_aggregated(law, rng, cfg.thresholds); return;
    case Mode::hybrid:
      if (total_ <= static_cast<long double>(cfg.cap))
        step_exact(law, rng, cfg.cap);
      else
        step_aggregated(law, rng, cfg.thresholds);
      return;
  }
}

ParticleMeasure step_exact(const ParticleMeasure& zeta, const BranchingLaw& law, Stream& rng, std::uint64_t cap) {
  Population p(zeta);
  p.step_exact(law, rng, cap);
  return p.to_measure();
}

ParticleMeasure step_aggregated(const ParticleMeasure& zeta, const BranchingLaw& law, Stream& rng,
                                const AggregationThresholds& t) {
  Population p(zeta);
  p.step_aggregated(law, rng, t);
  return p.to_measure();
}

PopulationStats population_stats(const Population& pop, const BranchingLaw& law, const IntervalSet* track) {
  PopulationStats s;
  s.generation = pop.generation();
  s.total = pop.total();
  if (pop.empty()) throw std::invalid_argument("statistics of an empty population");
  const long double log_total = std::log(pop.total());
  s.total_log = static_cast<double>(log_total);
  const long double log_hat = log_total - static_cast<long double>(pop.generation()) * std::log((long double)law.mean());
  s.normalized_total = static_cast<double>(std::exp(log_hat));
  if (!(s.normalized_total > 0.0) || !std::isfinite(s.normalized_total))
    throw NumericFailure("normalized total not representable at generation " + std::to_string(pop.generation()));
  s.mean_position = pop.mean_position();
  if (track) s.fraction = pop.fraction(lattice_scaled(*track, pop.generation()));
  return s;
}

EvolveResult evolve(const ParticleMeasure& zeta0, const BranchingLaw& law, std::int64_t n, const EvolveConfig& cfg,
                    Stream& rng, const IntervalSet* track) {
  if (n < 0) throw std::invalid_argument("number of generations must be non-negative");
  if (zeta0.empty()) throw std::invalid_argument("cannot evolve an empty particle measure");
  Population pop(zeta0);
  EvolveResult out;
  out.trajectory.reserve(static_cast<std::size_t>(n) + 1);
  out.trajectory.push_back(population_stats(pop, law, track));
  for (std::int64_t g = 0; g < n; ++g) {
    pop.step(law, rng, cfg);
    out.trajectory.push_back(population_stats(pop, law, track));
  }
  out.final_measure = pop.to_measure();
  return out;
}

Population evolve_population(Population pop, const BranchingLaw& law, std::int64_t n, const EvolveConfig& cfg,
                             Stream& rng) {
  if (n < 0) throw std::invalid_argument("number of generations must be non-negative");
  for (std::int64_t g = 0; g < n; ++g) pop.step(law, rng, cfg);
  return pop;
}

}  // namespace brw

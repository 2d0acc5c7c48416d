#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "brw/branching_law.hpp"
#include "brw/interval_set.hpp"
#include "brw/particle_measure.hpp"
#include "brw/rng.hpp"

namespace brw {

enum class Mode { exact, aggregated, hybrid };

std::string_view to_string(Mode m) noexcept;
Mode parse_mode(std::string_view text);

/// Switch points of the aggregated step, per lattice site with c particles.
struct AggregationThresholds {
  /// c <= iid_max: offspring total is the sum of c independent draws.
  std::uint64_t iid_max = 64;
  /// iid_max < c <= multinomial_max: exact total sum_k k M_k with
  /// M ~ Multinomial(c, pmf). Above it: rounded normal approximation.
  long double multinomial_max = 0x1p40L;
  /// Left/right split of T children: exact Binomial(T, 1/2) for T <= this,
  /// rounded normal approximation above.
  long double exact_split_max = 1e6L;
};

struct EvolveConfig {
  Mode mode = Mode::hybrid;
  /// exact mode refuses to step above this many particles; hybrid switches
  /// to aggregated steps once the total exceeds it.
  std::uint64_t cap = 10'000'000;
  AggregationThresholds thresholds;
};

/// Dense working form of a particle measure: counts per lattice site stored
/// as long double, which holds every integer up to 2^64 exactly. Beyond that
/// only the normal-approximation branches can produce such counts, and their
/// noise exceeds integer resolution.
class Population {
 public:
  Population() = default;
  explicit Population(const ParticleMeasure& zeta);
  static Population point(std::int64_t position, long double count = 1.0L, std::int64_t generation = 0);

  ParticleMeasure to_measure() const;

  std::int64_t generation() const noexcept { return generation_; }
  long double total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0.0L; }
  std::int64_t min_position() const noexcept { return offset_; }
  std::int64_t max_position() const noexcept {
    return offset_ + static_cast<std::int64_t>(counts_.size()) - 1;
  }
  long double count(std::int64_t position) const noexcept;

  /// Particles on the lattice points of S (lattice coordinates).
  long double mass(const IntervalSet& s) const;
  double fraction(const IntervalSet& s) const;
  double mean_position() const;

  /// One generation with every particle reproducing independently and every
  /// child stepping +-1 independently. Throws CapExceeded if total > cap.
  void step_exact(const BranchingLaw& law, Stream& rng, std::uint64_t cap);
  /// One generation drawn per lattice site (see AggregationThresholds).
  void step_aggregated(const BranchingLaw& law, Stream& rng, const AggregationThresholds& t);
  /// Dispatches on cfg.mode.
  void step(const BranchingLaw& law, Stream& rng, const EvolveConfig& cfg);

 private:
  void refresh_total();

  std::int64_t offset_ = 0;
  std::vector<long double> counts_;
  std::int64_t generation_ = 0;
  long double total_ = 0.0L;
};

/// ParticleMeasure-level single steps.
ParticleMeasure step_exact(const ParticleMeasure& zeta, const BranchingLaw& law, Stream& rng,
                           std::uint64_t cap = 10'000'000);
ParticleMeasure step_aggregated(const ParticleMeasure& zeta, const BranchingLaw& law, Stream& rng,
                                const AggregationThresholds& t = {});

struct PopulationStats {
  std::int64_t generation = 0;
  long double total = 0.0L;
  double total_log = 0.0;         // log |Z_n|
  double normalized_total = 0.0;  // |Zhat_n| = beta^{-n} |Z_n|
  double mean_position = 0.0;     // Mbar_n
  std::optional<double> fraction;  // Zbar_n(sqrt(n) A) when a set is tracked
};

PopulationStats population_stats(const Population& pop, const BranchingLaw& law,
                                 const IntervalSet* track = nullptr);

struct EvolveResult {
  std::vector<PopulationStats> trajectory;  // generations g0 .. g0 + n
  ParticleMeasure final_measure;
};

/// Runs n generations from zeta0, recording statistics after every
/// generation. Throws NumericFailure if |Z_n| overflows long double.
EvolveResult evolve(const ParticleMeasure& zeta0, const BranchingLaw& law, std::int64_t n,
                    const EvolveConfig& cfg, Stream& rng, const IntervalSet* track = nullptr);

/// Same dynamics without the bookkeeping; returns the final population.
Population evolve_population(Population pop, const BranchingLaw& law, std::int64_t n,
                             const EvolveConfig& cfg, Stream& rng);

}  // namespace brw

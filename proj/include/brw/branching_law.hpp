#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "brw/rng.hpp"

namespace brw {

/// Offspring law of |Z_1|: finite support on {2, 3, ...}.
class BranchingLaw {
 public:
  /// Throws std::invalid_argument unless every k >= 2, every probability is
  /// in (0, 1] and they sum to 1 within 1e-12.
  explicit BranchingLaw(std::map<int, double> pmf);

  /// P(|Z_1| = 2) = P(|Z_1| = 3) = 1/2, the default in tests and the CLI.
  static BranchingLaw binary_ternary();
  static BranchingLaw deterministic(int k);

  const std::map<int, double>& pmf() const noexcept { return pmf_; }
  double probability(int k) const noexcept;
  int b() const noexcept { return support_.front(); }
  int max_offspring() const noexcept { return support_.back(); }
  /// beta = E|Z_1|
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return variance_; }
  bool is_deterministic() const noexcept { return support_.size() == 1; }
  const std::vector<int>& support() const noexcept { return support_; }

  int sample(Stream& rng) const;

 private:
  std::map<int, double> pmf_;
  std::vector<int> support_;
  std::vector<double> cdf_;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

/// "k:prob,k:prob,..." (whitespace ignored).
BranchingLaw parse_branching_law(std::string_view text);
std::string to_string(const BranchingLaw& law);

}  // namespace brw

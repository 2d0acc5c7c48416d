#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One component of an IntervalSet. Infinite endpoints are always open.
struct Interval {
  double lower = -kInf;
  double upper = kInf;
  bool lower_closed = false;
  bool upper_closed = false;

  bool contains(double t) const noexcept;
  bool operator==(const Interval&) const = default;
};

/// Inclusive range of integer lattice points.
struct LatticeRange {
  std::int64_t first = 0;
  std::int64_t last = -1;

  bool empty() const noexcept { return first > last; }
};

/// Integer points of `c` clipped to [lo, hi], honouring open/closed endpoints.
LatticeRange lattice_points(const Interval& c, std::int64_t lo, std::int64_t hi);

/// Finite disjoint union of intervals with non-empty interiors, kept sorted
/// and normalized: components that overlap, or touch at an endpoint owned by
/// at least one of them, are merged. Merging happens only on exact equality
/// of endpoints.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Normalizes arbitrary (possibly overlapping, unsorted) components.
  /// Throws std::invalid_argument for a component with lower >= upper or NaN.
  explicit IntervalSet(std::vector<Interval> components);

  static IntervalSet empty() { return {}; }
  static IntervalSet real_line();
  static IntervalSet closed(double lower, double upper);
  static IntervalSet open(double lower, double upper);
  /// (-inf, x]
  static IntervalSet left_ray(double x);
  /// (x, +inf)
  static IntervalSet right_ray(double x);

  std::span<const Interval> components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }

  bool is_empty() const noexcept { return components_.empty(); }
  bool is_real_line() const noexcept;
  bool is_bounded() const noexcept;
  bool has_half_line() const noexcept;
  bool contains(double t) const noexcept;

  /// Largest |e| over finite endpoints, 0 if there are none.
  double max_abs_endpoint() const noexcept;
  /// Smallest and largest endpoint (may be infinite). Requires non-empty.
  std::pair<double, double> hull() const;

  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Interval> components_;
};

/// {t + x : t in S}. Callers form A - x as shift(A, -x).
IntervalSet shift(const IntervalSet& s, double x);
/// {c t : t in S}, c > 0.
IntervalSet scale(const IntervalSet& s, double c);
/// {-t : t in S}
IntervalSet mirror(const IntervalSet& s);
IntervalSet complement(const IntervalSet& s);
IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);

/// sqrt(n) * S, the set probed at generation n. For n = 0 the set is used
/// unscaled (only the origin is occupied).
IntervalSet lattice_scaled(const IntervalSet& s, std::int64_t n);

/// Grammar: `R` | `{}` | `empty` | interval ( `U` interval )*, where
/// interval = ('(' | '[') number ',' number (')' | ']') and number accepts
/// `inf`, `+inf`, `-inf`. Whitespace is ignored.
IntervalSet parse_interval_set(std::string_view text);
std::string to_string(const IntervalSet& s);

}  // namespace brw

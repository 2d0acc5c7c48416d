#pragma once

#include <cstdint>
#include <limits>

namespace brw {

/// Counter-based generator: output i of a stream is a bijective 64-bit mix of
/// (key, i). Streams are derived from (master seed, index) without any shared
/// state, so replica r sees the same numbers regardless of which thread runs
/// it or in what order. Satisfies UniformRandomBitGenerator.
class Stream {
 public:
  using result_type = std::uint64_t;

  constexpr Stream() = default;
  constexpr explicit Stream(std::uint64_t key) : key_(mix(key ^ 0x6a09e667f3bcc909ULL)) {}

  /// Independent child stream number `index` of `master`.
  static constexpr Stream derive(std::uint64_t master, std::uint64_t index) {
    return Stream(mix(master + 0x9e3779b97f4a7c15ULL * (index + 1)) ^ mix(index));
  }

  /// Child of this stream; consumes nothing from the parent.
  constexpr Stream split(std::uint64_t index) const { return derive(key_, index); }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

  /// splitmix64 finalizer
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_ = 0x6a09e667f3bcc909ULL;
  std::uint64_t counter_ = 0;
};

}  // namespace brw

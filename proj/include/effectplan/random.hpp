#pragma once

#include <cstdint>

namespace effectplan {

/// Counter-based generator: output i of stream s under seed k is a pure
/// function of (k, s, i), so replication r can always be regenerated from
/// its index regardless of which worker runs it. The mixing function is the
/// SplitMix64 finalizer.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed ^ mix64(stream + kGamma))) {}

  std::uint64_t next() noexcept { return mix64(key_ + (++counter_) * kGamma); }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53; }

  static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace effectplan

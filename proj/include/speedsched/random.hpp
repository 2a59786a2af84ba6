#pragma once

#include <cstdint>

namespace speedsched {

// SplitMix64 (Steele, Lea, Flood 2014). Part of the reproducibility contract:
// experiment CSVs depend on the exact bit stream produced here.
class SplitMix64 {
public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform on the open interval (0, 1): top 53 bits, centred in their cell.
  constexpr double uniform01() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Independent stream `id` of `seed`: state = mix(seed ^ (id * kGamma)).
  static constexpr SplitMix64 stream(std::uint64_t seed, std::uint64_t id) noexcept {
    return SplitMix64(mix(seed ^ (id * kGamma)));
  }

private:
  std::uint64_t state_;
};

enum class StreamId : std::uint64_t { Jobs = 1, Speeds = 2, Errors = 3, Derive = 4 };

inline SplitMix64 make_stream(std::uint64_t seed, StreamId id) {
  return SplitMix64::stream(seed, static_cast<std::uint64_t>(id));
}

// Standard normal quantile, Acklam's rational approximation without the
// refinement step (|relative error| < 1.15e-9). Requires 0 < u < 1.
double normal_quantile(double u);

}  // namespace speedsched

#pragma once

#include <cstdint>
#include <numbers>
#include <random>

namespace crpoly {

/// Seeded random stream. Worker `stream_id` of a run seeded with `seed`
/// always sees the same sequence, so results depend only on (seed, stream
/// count) and never on scheduling.
class rng_stream {
 public:
  explicit rng_stream(std::uint64_t seed, std::uint64_t stream_id = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32), 0x43525031u};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1) with 53 random bits. The conversion is spelled out
  /// instead of using std::uniform_real_distribution, whose output is
  /// implementation-defined.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform angle on [0, 2*pi).
  double angle() {
    const double t = 2.0 * std::numbers::pi * uniform();
    return t < 2.0 * std::numbers::pi ? t : 0.0;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crpoly

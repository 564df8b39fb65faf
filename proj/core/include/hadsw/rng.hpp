#pragma once

#include <cstdint>
#include <random>

namespace hadsw {

/// Deterministic random stream. The engine (mt19937_64) and the variate
/// recipes below are fully specified, so sequences are identical across
/// platforms and thread schedules.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return (engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (explicit, not std::normal_distribution,
  /// whose output is implementation-defined).
  double gaussian();

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Mixes (seed, counter) into a fresh stream seed. Counter-based: stream k
/// is independent of how many draws earlier streams consumed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

inline RngStream derive_stream(std::uint64_t seed, std::uint64_t counter) {
  return RngStream(mix_seed(seed, counter));
}

}  // namespace hadsw

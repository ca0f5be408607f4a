#pragma once

#include <cmath>
#include <cstdint>

namespace altserve {

// SplitMix64 (Steele, Lea & Burrows, "Fast splittable pseudorandom number
// generators", OOPSLA 2014). State advances along a Weyl sequence and each
// output is the avalanche mix of the counter, so the generator is effectively
// counter-based: draw k of a stream is a pure function of (initial state, k).
//
// Streams for replications are derived from (master seed, stream index) by
// pushing both through the output mix before combining; see stream().
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Independent stream for a given replication index. Both inputs are fully
  // avalanched, so adjacent seeds or indices do not yield correlated states.
  static SplitMix64 stream(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t a = mix(master_seed + 0x9E3779B97F4A7C15ULL);
    std::uint64_t b = mix(index + 0xD1B54A32D192ED03ULL);
    return SplitMix64(mix(a ^ (b + 0x8BB84B93962EACC9ULL)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform on (0, 1]: 53 random bits, shifted away from zero so that
  // log(next_unit()) is always finite.
  double next_unit() {
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1p-53;
  }

  double exponential(double rate) { return -std::log(next_unit()) / rate; }

 private:
  std::uint64_t state_;
};

}  // namespace altserve

#pragma once

#include <cmath>
#include <cstdint>

namespace hcp {

/// Counter-mode SplitMix64 generator.
///
/// Output i of stream k under seed s is mix(key(s,k) + (i+1)*PHI) where mix is
/// the SplitMix64 finalizer and PHI the 64-bit golden-ratio increment.  State
/// is a plain counter, so replicas get independent streams by stream index,
/// draws can be replayed from (seed, stream, counter), and results are
/// identical on every IEEE-754 platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(derive_key(seed, stream)) {}

  std::uint64_t next_u64() {
    ctr_ += 1;
    return mix(key_ + ctr_ * PHI);
  }

  /// Uniform on [0,1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0,1]; safe as a log argument.
  double next_unit_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Exponential waiting time with the given rate.
  double next_exponential(double rate) {
    return -std::log(next_unit_pos()) / rate;
  }

  std::uint64_t counter() const { return ctr_; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t PHI = 0x9E3779B97F4A7C15ull;

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    // Mixing the stream in separately keeps distinct streams from aliasing
    // into shifted copies of one counter sequence.
    return mix(mix(seed ^ 0x8BADF00D5EEDC0DEull) + stream * PHI);
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace hcp

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace sbr {

// Deterministic random stream. Uniform/normal variates are generated from
// raw 64-bit engine output instead of std:: distributions, whose output is
// implementation-defined; traces produced with a given seed must be
// reproducible bit-for-bit.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(mix(seed)) {}

  // Per-trial stream derived from a base seed and a trial index.
  static RngStream for_trial(std::uint64_t base_seed, std::uint64_t trial_index) {
    return RngStream(mix(base_seed) ^ mix(trial_index * 0x9e3779b97f4a7c15ULL + 1));
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [0, n) by rejection.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n == 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do { v = eng_(); } while (v >= limit);
    return v % n;
  }

  // Standard normal via Box-Muller; pairs cached.
  double normal();

 private:
  static std::uint64_t mix(std::uint64_t z);  // splitmix64 finalizer

  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sbr

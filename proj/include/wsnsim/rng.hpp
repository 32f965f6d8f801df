#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace wsnsim {

/// Seeded random stream. Draws are produced from the raw 64-bit engine output
/// so that sequences are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seeds from several words (scenario seed, protocol, sink mode, ...).
  Rng(std::initializer_list<std::uint32_t> words) {
    std::seed_seq seq(words);
    engine_.seed(seq);
  }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wsnsim

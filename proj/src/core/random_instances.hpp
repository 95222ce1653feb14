#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "direct.hpp"
#include "matrix.hpp"

namespace specband {

// Deterministic across platforms: uses the raw mt19937_64 stream rather than
// the implementation-defined standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

PeriodicMatrixHat random_hat(Rng& rng, std::size_t n, Regime regime);
PeriodicMatrixGeneral random_general(Rng& rng, std::size_t n, Regime regime);

// Regime cycles with index, size cycles through 3..12.
Regime regime_for_index(std::size_t i) noexcept;
std::size_t size_for_index(std::size_t i) noexcept;

}  // namespace specband

#ifndef MIBC_RNG_HPP
#define MIBC_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace mibc::rng {

/// Counter-based per-trial random stream. The state is derived from
/// (seed, point index, trial index) with splitmix64 mixing, so any trial
/// of any sweep point can be generated independently of scheduling order;
/// results are identical for every thread count.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t point, std::uint64_t trial) {
    state_ = seed;
    absorb(point + 0x9E3779B97F4A7C15ULL);
    absorb(trial + 0xBF58476D1CE4E5B9ULL);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1]: never returns 0, so -log is always finite.
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Circularly symmetric complex Gaussian CN(0, variance): Rayleigh
  /// amplitude, uniform phase. E|n|^2 = variance.
  std::complex<double> complex_gaussian(double variance) {
    const double amp = std::sqrt(-variance * std::log(uniform_pos()));
    const double ph = 2.0 * std::numbers::pi * uniform();
    return std::polar(amp, ph);
  }

  /// Uniform integer in [0, n).
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>((next_u64() >> 32) % n);
  }

 private:
  void absorb(std::uint64_t v) {
    state_ ^= v;
    state_ = next_u64();
  }

  std::uint64_t state_;
};

}  // namespace mibc::rng

#endif  // MIBC_RNG_HPP

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "openxxz/types.hpp"

namespace openxxz {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random source.  All randomness in the project flows from one
// of these; per-trial substreams are derived from the base seed and the trial
// index so a single seed reproduces an entire run.  Uniform doubles are built
// from the top 53 bits of the engine output, so streams are identical on any
// platform with IEEE doubles.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

    SeededRng substream(std::uint64_t index) const {
        return SeededRng(splitmix64(seed_ ^ (0xa5a5a5a5a5a5a5a5ULL + index * 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t bits() { return eng_(); }

    double uniform(double lo, double hi) {
        double t = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * t;
    }

    cplx unit_phase() {
        double th = uniform(0.0, 2.0 * std::numbers::pi);
        return {std::cos(th), std::sin(th)};
    }

    // modulus uniform in [rlo, rhi], phase uniform
    cplx annulus(double rlo, double rhi) { return uniform(rlo, rhi) * unit_phase(); }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace openxxz

#pragma once

#include <cmath>
#include <cstdint>

#include "silverforge/linalg.hpp"

namespace silverforge {

// Counter-based generator: every draw is a hash of (seed, stream, counter),
// so trial substreams are independent and bit-exact regardless of how many
// workers consume them. Gaussians come from Box-Muller on top.
class Prng {
  public:
    Prng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), base_(mix(mix(seed) ^ stream)) {}

    // Independent substream; Monte-Carlo trials use substream(trial).
    Prng substream(std::uint64_t idx) const { return Prng(seed_, stream_ * 0x10001ULL + idx + 1); }

    std::uint64_t next_u64() { return mix(mix(base_ + counter_++)); }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal (mean 0, variance 1).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Circularly symmetric complex Gaussian, total variance `var`
    // (real and imaginary parts each carry var/2).
    cplx next_cgaussian(double var = 1.0) {
        const double s = std::sqrt(var / 2.0);
        const double re = s * next_gaussian();
        const double im = s * next_gaussian();
        return {re, im};
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace silverforge

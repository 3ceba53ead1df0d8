#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "stozeta/common.hpp"

namespace stozeta {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Reproducible random stream addressed by (seed, stream_index).  The engine is
// std::mt19937_64 (bit-exact across platforms by the standard); all variate
// transforms below are hand-rolled so the full sequence is platform-stable.
// Distinct stream indices give decorrelated substreams for replica farming.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream_index = 0)
        : seed_(seed), stream_(stream_index) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s ^= stream_index * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL;
        std::uint64_t b = splitmix64(s);
        engine_.seed(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
        engine_.discard(8);
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_index() const noexcept { return stream_; }

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1]
    double uniform01_positive() { return 1.0 - uniform01(); }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // uniform angle in (-pi, pi]
    double uniform_angle() { return std::numbers::pi * (1.0 - 2.0 * uniform01()); }

    // standard normal via Box-Muller; generates pairs, caches the second
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double r = std::sqrt(-2.0 * std::log(uniform01_positive()));
        double t = 2.0 * std::numbers::pi * uniform01();
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

    // Gamma(shape, scale 1), Marsaglia-Tsang; shape < 1 via the boost trick
    double gamma(double shape) {
        require(shape > 0.0, "argument", "gamma shape must be positive");
        if (shape < 1.0) {
            double g = gamma(shape + 1.0);
            return g * std::pow(uniform01_positive(), 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform01_positive();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // chi distribution with k degrees of freedom: chi_k = sqrt(2 Gamma(k/2))
    double chi(double k) { return std::sqrt(2.0 * gamma(0.5 * k)); }

    // Beta(1, b) by inverse CDF: 1 - U^{1/b}
    double beta_one(double b) {
        require(b > 0.0, "argument", "beta parameter must be positive");
        return 1.0 - std::pow(uniform01_positive(), 1.0 / b);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace stozeta

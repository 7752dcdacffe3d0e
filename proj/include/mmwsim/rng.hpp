#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "mmwsim/linalg.hpp"

namespace mmwsim {

// Deterministic random source. Distribution transforms are implemented
// explicitly (rather than via std:: distributions) so that streams are
// bit-reproducible across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller (both outputs consumed).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Circularly symmetric complex normal with E|z|^2 = 1.
    Complex complex_gaussian() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        const double a = 2.0 * kPi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    // Zero-mean Laplacian with scale b (variance 2*b^2), via inverse CDF.
    double laplacian(double scale_b) {
        const double u = uniform() - 0.5;
        const double m = std::max(1.0 - 2.0 * std::abs(u), 1e-300);
        const double mag = -scale_b * std::log(m);
        return u < 0.0 ? -mag : mag;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// splitmix64 finalizer; decorrelates structured seed inputs.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent stream seed per (sweep point, drop); invariant to the order in
// which parallel workers pick up jobs.
constexpr std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t sweep_index,
                                 std::uint64_t drop_index) {
    std::uint64_t z = splitmix64(base_seed);
    z = splitmix64(z ^ (0xA0761D6478BD642FULL + sweep_index));
    z = splitmix64(z ^ (0xE7037ED1A0B428DBULL + drop_index));
    return z;
}

}  // namespace mmwsim

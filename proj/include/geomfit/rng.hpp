/**
 * @file rng.hpp
 * @brief Seeded random numbers with a fully specified bit stream.
 *
 * std::mt19937_64 output is pinned by the standard; the distributions here
 * are hand-rolled because the standard library ones are implementation
 * defined, which would break reproducible datasets and golden files.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <geomfit/vec.hpp>

namespace geomfit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [lo, hi], both inclusive.
    int uniform_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int k = static_cast<int>(uniform01() * span);
        if (k >= span) k = span - 1;
        return lo + k;
    }

    /// Standard normal via Box-Muller; the second value of each pair is cached.
    double gauss() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    /// Uniform direction on the unit sphere.
    Vec3 unit_vector() {
        for (;;) {
            const Vec3 v{gauss(), gauss(), gauss()};
            const double n = norm(v);
            if (n > 1e-6) return v / n;
        }
    }

    /// Decorrelated child stream, independent of how many draws happened.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace geomfit

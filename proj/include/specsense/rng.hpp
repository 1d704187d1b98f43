#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

namespace specsense {

/// SplitMix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Hash a base seed with a coordinate path (cell indices, trial number, ...)
/// into a per-stream seed. Order of path elements matters.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(base);
    for (auto v : path) h = splitmix64(h ^ v);
    return h;
}

/// Deterministic variate source. The transforms live here rather than in
/// <random> distributions so that a given seed produces the same stream on
/// every compiler and platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Exponential with the given mean (inverse CDF on 1-u, so u = 0 is safe).
    double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

    /// Standard normal pair via the trigonometric Box-Muller transform;
    /// consumes exactly two uniforms.
    std::pair<double, double> gaussian_pair() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        const double a = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace specsense

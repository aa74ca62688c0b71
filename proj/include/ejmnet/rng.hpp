#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ejmnet {

// Reproducible random streams. mt19937_64 has a standard-specified
// algorithm; doubles are produced by explicit bit manipulation instead of
// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Independent stream for worker `index` under a master seed.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(mix(seed, index));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe for log().
    double next_double_open() {
        return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Symmetric Dirichlet(1) sample of dimension n (normalized exponentials).
    std::vector<double> dirichlet(std::size_t n) {
        std::vector<double> out(n);
        double total = 0.0;
        for (auto& v : out) {
            v = -std::log(next_double_open());
            total += v;
        }
        for (auto& v : out) v /= total;
        return out;
    }

    template <std::size_t N>
    std::array<double, N> dirichlet_array() {
        std::array<double, N> out{};
        double total = 0.0;
        for (auto& v : out) {
            v = -std::log(next_double_open());
            total += v;
        }
        for (auto& v : out) v /= total;
        return out;
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
        // splitmix64 finalizer over the pair
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

}

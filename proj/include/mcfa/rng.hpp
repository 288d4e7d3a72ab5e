#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string_view>

namespace mcfa {

// Splittable random streams. A RandomSource holds a 64-bit seed; named
// sub-streams are derived from (seed, name, index) and are statistically
// independent, so replicate loops can hand disjoint streams to workers.
// Output is bitwise reproducible for identical (seed, name, index).
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0) {
        std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (fnv1a(name) + index));
        for (auto& word : state_) word = splitmix64(x);
        have_spare_ = false;
        spare_ = 0.0;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on [0,1) with 53 random bits
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform on (0,1), safe as argument of log()
    double uniform01_pos() {
        double u = uniform01();
        while (u == 0.0) u = uniform01();
        return u;
    }

    // standard normal via Box-Muller, one spare cached
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform01_pos();
        const double v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("below: n must be positive");
        // rejection to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static constexpr std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::uint64_t state_[4];
    bool have_spare_;
    double spare_;
};

struct RandomSource {
    std::uint64_t seed = 0;

    RandomStream stream(std::string_view name, std::uint64_t index = 0) const {
        return RandomStream(seed, name, index);
    }
};

} // namespace mcfa

// rng.hpp — Deterministic random numbers (xoshiro256** seeded via splitmix64)
// and a Poisson sampler built on them. std::* distributions are
// implementation-defined, so seeded pipelines use these to stay
// bit-reproducible across platforms.

#pragma once

#include <cmath>
#include <cstdint>

#include "qfc/errors.hpp"

namespace qfc {

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (int i = 0; i < 4; ++i) s_[i] = splitmix(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal (Box-Muller; one value per call, deterministic)
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    static std::uint64_t splitmix(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t s_[4];
};

// Poisson draw by inversion; means above 400 are split into chunks so the
// cumulative product never underflows. Exact distribution, deterministic.
inline std::uint64_t poisson(Rng& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("poisson: invalid mean");
    std::uint64_t total = 0;
    while (mean > 400.0) {
        double chunk = 400.0;
        const double l = std::exp(-chunk);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= rng.uniform();
        } while (p > l);
        total += k - 1;
        mean -= chunk;
    }
    if (mean > 0.0) {
        const double l = std::exp(-mean);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= rng.uniform();
        } while (p > l);
        total += k - 1;
    }
    return total;
}

}  // namespace qfc

#pragma once

#include <cmath>
#include <cstdint>

namespace nfvsim {

// Counter-based generator (splitmix64). All randomness in a run flows through
// one instance seeded from the run config, so results are reproducible across
// platforms without depending on libstdc++ distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Box-Muller, no caching so the draw count per sample is fixed.
    double normal(double mean, double sigma) {
        double u1 = 1.0 - next_double(); // (0, 1]
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Knuth's product method, chunked so exp(-lambda) never underflows.
    long poisson(double mean) {
        long total = 0;
        double remaining = mean;
        while (remaining > 500.0) {
            total += poisson_small(500.0);
            remaining -= 500.0;
        }
        total += poisson_small(remaining);
        return total;
    }

private:
    long poisson_small(double lambda) {
        if (lambda <= 0.0) return 0;
        const double limit = std::exp(-lambda);
        double p = 1.0;
        long k = 0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

    std::uint64_t state_;
};

} // namespace nfvsim

#pragma once

#include <cmath>
#include <cstdint>

namespace nfvsim {

// Four-dimensional capacity/demand vector. Quantities are fixed-point
// integers (milli compute units, MB, GB, Mbit/s) so capacity arithmetic and
// feasibility audits are exact.
struct ResourceVector {
    std::int64_t cpu_milli{0};
    std::int64_t memory_mb{0};
    std::int64_t storage_gb{0};
    std::int64_t bandwidth_mbit{0};

    constexpr ResourceVector& operator+=(const ResourceVector& o) {
        cpu_milli += o.cpu_milli;
        memory_mb += o.memory_mb;
        storage_gb += o.storage_gb;
        bandwidth_mbit += o.bandwidth_mbit;
        return *this;
    }

    constexpr ResourceVector& operator-=(const ResourceVector& o) {
        cpu_milli -= o.cpu_milli;
        memory_mb -= o.memory_mb;
        storage_gb -= o.storage_gb;
        bandwidth_mbit -= o.bandwidth_mbit;
        return *this;
    }

    friend constexpr ResourceVector operator+(ResourceVector a, const ResourceVector& b) {
        a += b;
        return a;
    }

    friend constexpr ResourceVector operator-(ResourceVector a, const ResourceVector& b) {
        a -= b;
        return a;
    }

    friend constexpr bool operator==(const ResourceVector&, const ResourceVector&) = default;

    constexpr bool nonnegative() const {
        return cpu_milli >= 0 && memory_mb >= 0 && storage_gb >= 0 && bandwidth_mbit >= 0;
    }

    // Component-wise <=.
    constexpr bool fits_within(const ResourceVector& cap) const {
        return cpu_milli <= cap.cpu_milli && memory_mb <= cap.memory_mb &&
               storage_gb <= cap.storage_gb && bandwidth_mbit <= cap.bandwidth_mbit;
    }

    double cpu_cu() const { return static_cast<double>(cpu_milli) / 1000.0; }
};

// Builds a vector from catalog units (CU, MB, GB, Mbit/s), rounding CU to the
// milli-CU grid.
inline ResourceVector make_resources(double cpu_cu, std::int64_t memory_mb,
                                     std::int64_t storage_gb, std::int64_t bandwidth_mbit = 0) {
    ResourceVector r;
    r.cpu_milli = static_cast<std::int64_t>(std::llround(cpu_cu * 1000.0));
    r.memory_mb = memory_mb;
    r.storage_gb = storage_gb;
    r.bandwidth_mbit = bandwidth_mbit;
    return r;
}

} // namespace nfvsim

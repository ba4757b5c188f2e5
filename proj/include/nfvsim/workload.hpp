#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nfvsim/machine.hpp"
#include "nfvsim/rng.hpp"

namespace nfvsim {

enum class Resource { cpu, mem, disk, net };

// Per-interval load percentages for one resource.
struct LoadTrace {
    Resource resource{Resource::cpu};
    std::vector<int> values;        // each in [0, 100]
    std::int64_t interval_len{300}; // seconds per interval
};

// Parses the workload file format: optional leading '#' comment lines (a
// "# interval=<seconds>" comment sets the interval length), then one decimal
// integer 0-100 per line. Blank lines are ignored. Throws ParseError /
// RangeError with the offending line number, or EmptyTrace.
LoadTrace parse_trace(std::istream& in, Resource resource);
LoadTrace load_trace_file(const std::string& path, Resource resource);

// Canonical byte form: "# interval=<n>\n" then one value per line, LF only.
std::string render_trace(const LoadTrace& trace);
void write_trace_file(const LoadTrace& trace, const std::string& path);

// The four files of one workload: <prefix>.cpu/.mem/.disk/.bw.
struct TraceSet {
    LoadTrace cpu;
    LoadTrace mem;
    LoadTrace disk;
    LoadTrace net;
};

TraceSet load_trace_set(const std::string& prefix);
void write_trace_set(const TraceSet& set, const std::string& prefix);

// Built-in one-day computational-intensive profile, expanded to 24 hourly
// values (interval 3600 s).
TraceSet diurnal_profile();

enum class AppType { cpu_intensive, io_intensive, hybrid };
enum class LengthDistribution { uniform, normal, poisson };

struct GeneratorSpec {
    LengthDistribution dist{LengthDistribution::uniform};
    double uniform_lo{1e3}; // MI
    double uniform_hi{1e4};
    double normal_mean{5e3};
    double normal_sigma{1e3};
    double poisson_mean{5e3};
    int task_count{0};
    AppType app_type{AppType::cpu_intensive};
    std::uint64_t seed{0};

    void validate() const; // throws SpecError
};

// Per-resource load weights implied by an application type.
LoadFractions app_type_weights(AppType type);

// Draws task_count NFVlet lengths from the spec's distribution (non-positive
// samples re-drawn) and stamps the app-type weights. Deterministic for a
// fixed (spec, seed). NFVlets come back with ids 0..n-1 and no owning VM.
std::vector<Nfvlet> generate_nfvlets(const GeneratorSpec& spec, Rng& rng);

struct NfvletRuntime {
    double duration_s{0.0};
    double pm_cpu_load{0.0};
};

// duration = length/vm_mips; host CPU load = vm_mips/pm_mips while running.
NfvletRuntime nfvlet_runtime(double length_mi, double vm_mips, double pm_mips);

} // namespace nfvsim

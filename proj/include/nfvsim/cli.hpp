#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nfvsim/workload.hpp"

namespace nfvsim {

// Exit code contract: 0 success, 2 usage/config error, 3 runtime invariant
// violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInvariant = 3;

struct RunManifest {
    std::string config_path;
    std::string out_dir{"."};
    int verbosity{0};
    std::optional<std::uint64_t> seed_override;
};

int cmd_run(const RunManifest& manifest);

int cmd_compare(const std::vector<std::string>& config_paths, const RunManifest& base,
                std::vector<std::string> policies);

struct GenWorkloadOptions {
    std::string name; // output prefix, files <name>.cpu/.mem/.disk/.bw
    std::string out_dir{"."};
    bool diurnal{false};
    GeneratorSpec spec; // distribution mode; task_count = number of intervals
    std::int64_t interval_len{300};
};

int cmd_gen_workload(const GenWorkloadOptions& opts);

int cmd_validate_config(const RunManifest& manifest);

} // namespace nfvsim

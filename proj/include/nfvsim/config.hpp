#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfvsim/engine.hpp"

namespace nfvsim {

// Flat key-value run configuration with [section] headers. Values keep the
// line they came from so errors can point at the file.
struct ConfigFile {
    struct Entry {
        std::string value;
        int line{0};
    };
    std::string filename;
    std::map<std::string, Entry> values; // "section.key" -> entry
};

ConfigFile parse_config(std::istream& in, const std::string& filename);
ConfigFile load_config_file(const std::string& path);

// Builds a validated SimConfig, applying defaults for absent keys. Unknown
// keys are errors. seed_override (from --seed) wins over the file's seed;
// env_seed (from NFVSIM_SEED) is the fallback when the file has none.
SimConfig make_sim_config(const ConfigFile& file,
                          std::optional<std::uint64_t> seed_override = std::nullopt,
                          std::optional<std::uint64_t> env_seed = std::nullopt);

// Every effective key with its final value, in stable order; echoed into
// summary.txt so runs are self-describing.
std::vector<std::pair<std::string, std::string>> effective_config(const SimConfig& cfg);

} // namespace nfvsim

#include "nfvsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "nfvsim/config.hpp"
#include "nfvsim/engine.hpp"
#include "nfvsim/errors.hpp"

namespace nfvsim {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot write output file: " + path.string());
    out << content;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw SimError("cannot create output directory " + dir + ": " + ec.message());
}

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("NFVSIM_SEED");
    if (!v || !*v) return std::nullopt;
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("NFVSIM_SEED is not an unsigned integer: " + std::string(v));
    }
}

std::string case_name(const std::string& path) {
    return fs::path(path).stem().string();
}

} // namespace

int cmd_run(const RunManifest& manifest) {
    try {
        SimConfig cfg = make_sim_config(load_config_file(manifest.config_path),
                                        manifest.seed_override, env_seed());
        ensure_out_dir(manifest.out_dir);
        SimReport report = run(cfg);
        write_file(fs::path(manifest.out_dir) / "summary.txt", render_summary(report));
        write_file(fs::path(manifest.out_dir) / "timeseries.csv", render_timeseries(report));
        if (manifest.verbosity > 0) std::cout << render_summary(report);
        std::cout << "run complete: " << report.ticks << " ticks, "
                  << report.migration_count << " migrations\n";
        return kExitOk;
    } catch (const InvariantViolation& e) {
        std::cerr << "nfvsim: invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const SimError& e) {
        std::cerr << "nfvsim: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_compare(const std::vector<std::string>& config_paths, const RunManifest& base,
                std::vector<std::string> policies) {
    try {
        // de-duplicate, preserving first occurrence
        std::vector<std::string> unique;
        for (const std::string& p : policies) {
            if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(p);
            else std::cerr << "nfvsim: warning: duplicate policy '" << p << "' ignored\n";
        }
        for (const std::string& p : unique) {
            if (!known_policy(p)) {
                std::cerr << "nfvsim: unknown policy '" << p
                          << "' (valid: drs, ecocloud, nfv)\n";
                return kExitConfig;
            }
        }
        if (unique.size() < 2) {
            std::cerr << "nfvsim: compare needs at least 2 distinct policies\n";
            return kExitConfig;
        }
        if (config_paths.empty()) {
            std::cerr << "nfvsim: compare needs at least one --config\n";
            return kExitConfig;
        }

        std::vector<CompareCase> cases;
        for (const std::string& path : config_paths) {
            CompareCase c;
            c.name = case_name(path);
            c.config = make_sim_config(load_config_file(path), base.seed_override, env_seed());
            cases.push_back(std::move(c));
        }

        ensure_out_dir(base.out_dir);
        std::vector<ComparisonCell> cells = compare(cases, unique);
        write_file(fs::path(base.out_dir) / "comparison.csv", render_comparison(cells));
        for (const ComparisonCell& cell : cells) {
            if (cell.failed)
                std::cerr << "nfvsim: warning: " << cell.case_name << "/" << cell.policy
                          << " failed: " << cell.error << "\n";
        }
        std::cout << "comparison complete: " << cells.size() << " cells\n";
        return kExitOk;
    } catch (const InvariantViolation& e) {
        std::cerr << "nfvsim: invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const SimError& e) {
        std::cerr << "nfvsim: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_gen_workload(const GenWorkloadOptions& opts) {
    try {
        if (opts.name.empty()) {
            std::cerr << "nfvsim: gen-workload needs --name\n";
            return kExitConfig;
        }
        ensure_out_dir(opts.out_dir);
        std::string prefix = (fs::path(opts.out_dir) / opts.name).string();

        if (opts.diurnal) {
            write_trace_set(diurnal_profile(), prefix);
            std::cout << "wrote diurnal workload to " << prefix << ".{cpu,mem,disk,bw}\n";
            return kExitOk;
        }

        GeneratorSpec spec = opts.spec;
        spec.validate();
        Rng rng(spec.seed);
        LoadFractions weights = app_type_weights(spec.app_type);

        auto sample_percent = [&rng, &spec]() {
            double raw = 0.0;
            switch (spec.dist) {
            case LengthDistribution::uniform:
                raw = rng.uniform(spec.uniform_lo, spec.uniform_hi);
                break;
            case LengthDistribution::normal:
                raw = rng.normal(spec.normal_mean, spec.normal_sigma);
                break;
            case LengthDistribution::poisson:
                raw = static_cast<double>(rng.poisson(spec.poisson_mean));
                break;
            }
            return raw;
        };
        auto clamp_percent = [](double v) {
            long r = std::lround(v);
            return static_cast<int>(std::clamp(r, 0L, 100L));
        };

        TraceSet set;
        set.cpu.resource = Resource::cpu;
        set.mem.resource = Resource::mem;
        set.disk.resource = Resource::disk;
        set.net.resource = Resource::net;
        set.cpu.interval_len = set.mem.interval_len = opts.interval_len;
        set.disk.interval_len = set.net.interval_len = opts.interval_len;
        for (int i = 0; i < spec.task_count; ++i) {
            set.cpu.values.push_back(clamp_percent(sample_percent() * weights.cpu));
            set.mem.values.push_back(clamp_percent(sample_percent() * weights.mem));
            set.disk.values.push_back(clamp_percent(sample_percent() * weights.disk));
            set.net.values.push_back(clamp_percent(sample_percent() * weights.net));
        }
        write_trace_set(set, prefix);
        if (spec.task_count == 0)
            std::cerr << "nfvsim: warning: --count 0 wrote header-only files; they will be "
                         "rejected as empty traces when read back\n";
        std::cout << "wrote " << spec.task_count << "-interval workload to " << prefix
                  << ".{cpu,mem,disk,bw}\n";
        return kExitOk;
    } catch (const SimError& e) {
        std::cerr << "nfvsim: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_validate_config(const RunManifest& manifest) {
    try {
        SimConfig cfg = make_sim_config(load_config_file(manifest.config_path),
                                        manifest.seed_override, env_seed());
        for (const auto& [key, value] : effective_config(cfg))
            std::cout << key << " = " << value << "\n";
        return kExitOk;
    } catch (const SimError& e) {
        std::cerr << "nfvsim: " << e.what() << "\n";
        return kExitConfig;
    }
}

} // namespace nfvsim

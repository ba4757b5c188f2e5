#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nfvsim/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"nfvsim - energy-aware NFV data-center simulator"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    int verbosity = 0;
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", seed, "seed override (beats config file and NFVSIM_SEED)");
    app.add_flag("-v,--verbose", verbosity, "print the summary to stdout as well");

    auto* run = app.add_subcommand("run", "execute one simulation run");
    std::string run_config;
    run->add_option("--config", run_config, "run configuration file")->required();

    auto* cmp = app.add_subcommand("compare", "run several policies on the same workload");
    std::vector<std::string> cmp_configs;
    std::string cmp_policies = "drs,ecocloud,nfv";
    cmp->add_option("--config", cmp_configs, "case configuration file(s)")->required();
    cmp->add_option("--policy", cmp_policies, "comma-separated policy names")
        ->capture_default_str();

    auto* gen = app.add_subcommand("gen-workload", "write the four workload trace files");
    nfvsim::GenWorkloadOptions gen_opts;
    std::string gen_dist = "uniform";
    std::string gen_app = "cpu";
    std::uint64_t gen_seed = 0;
    gen->add_option("--name", gen_opts.name, "output file prefix")->required();
    gen->add_flag("--diurnal", gen_opts.diurnal, "emit the built-in one-day profile");
    gen->add_option("--count", gen_opts.spec.task_count, "number of intervals to generate");
    gen->add_option("--distribution", gen_dist, "uniform | normal | poisson")
        ->capture_default_str();
    gen->add_option("--app-type", gen_app, "cpu | io | hybrid")->capture_default_str();
    gen->add_option("--mean", gen_opts.spec.normal_mean, "normal mean (percent)");
    gen->add_option("--sigma", gen_opts.spec.normal_sigma, "normal sigma (percent)");
    gen->add_option("--lambda", gen_opts.spec.poisson_mean, "poisson mean (percent)");
    gen->add_option("--interval", gen_opts.interval_len, "seconds per interval")
        ->capture_default_str();
    gen->add_option("--gen-seed", gen_seed, "generator seed");

    auto* val = app.add_subcommand("validate-config", "parse a config and echo effective keys");
    std::string val_config;
    val->add_option("--config", val_config, "run configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return nfvsim::kExitConfig;
    }

    nfvsim::RunManifest manifest;
    manifest.out_dir = out_dir;
    manifest.seed_override = seed;
    manifest.verbosity = verbosity;

    if (run->parsed()) {
        manifest.config_path = run_config;
        return nfvsim::cmd_run(manifest);
    }
    if (cmp->parsed()) {
        std::vector<std::string> policies;
        std::string token;
        for (char c : cmp_policies + ",") {
            if (c == ',') {
                if (!token.empty()) policies.push_back(token);
                token.clear();
            } else {
                token += c;
            }
        }
        return nfvsim::cmd_compare(cmp_configs, manifest, policies);
    }
    if (gen->parsed()) {
        gen_opts.out_dir = out_dir;
        if (gen_dist == "uniform") gen_opts.spec.dist = nfvsim::LengthDistribution::uniform;
        else if (gen_dist == "normal") gen_opts.spec.dist = nfvsim::LengthDistribution::normal;
        else if (gen_dist == "poisson") gen_opts.spec.dist = nfvsim::LengthDistribution::poisson;
        else {
            std::fprintf(stderr, "nfvsim: unknown distribution '%s'\n", gen_dist.c_str());
            return nfvsim::kExitConfig;
        }
        if (gen_app == "cpu") gen_opts.spec.app_type = nfvsim::AppType::cpu_intensive;
        else if (gen_app == "io") gen_opts.spec.app_type = nfvsim::AppType::io_intensive;
        else if (gen_app == "hybrid") gen_opts.spec.app_type = nfvsim::AppType::hybrid;
        else {
            std::fprintf(stderr, "nfvsim: unknown app type '%s'\n", gen_app.c_str());
            return nfvsim::kExitConfig;
        }
        gen_opts.spec.seed = seed.value_or(gen_seed);
        // percent-space defaults for trace generation
        if (gen->count("--mean") == 0) gen_opts.spec.normal_mean = 50.0;
        if (gen->count("--sigma") == 0) gen_opts.spec.normal_sigma = 15.0;
        if (gen->count("--lambda") == 0) gen_opts.spec.poisson_mean = 50.0;
        gen_opts.spec.uniform_lo = 0.0;
        gen_opts.spec.uniform_hi = 100.0;
        return nfvsim::cmd_gen_workload(gen_opts);
    }
    manifest.config_path = val_config;
    return nfvsim::cmd_validate_config(manifest);
}

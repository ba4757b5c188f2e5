#include <doctest.h>

#include "nfvsim/cli.hpp"
#include "nfvsim/errors.hpp"
#include "nfvsim/workload.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace nfvsim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() /
                     ("nfvsim_cli_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

std::string write(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    return path.string();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kSmallRun =
    "[sim]\n"
    "duration = 1200\n"
    "tick = 300\n"
    "seed = 4\n"
    "[fleet]\n"
    "pm_type1 = 3\n"
    "pm_type2 = 2\n"
    "vm_random = 6\n";

} // namespace

TEST_CASE("cmd_run writes summary and timeseries") {
    TempDir dir;
    RunManifest manifest;
    manifest.config_path = write(dir.path / "run.ini", kSmallRun);
    manifest.out_dir = (dir.path / "out").string();

    CHECK(cmd_run(manifest) == kExitOk);
    std::string summary = slurp(dir.path / "out" / "summary.txt");
    CHECK(summary.find("total_energy_kwh = ") != std::string::npos);
    CHECK(summary.find("sim.seed = 4") != std::string::npos);
    std::string series = slurp(dir.path / "out" / "timeseries.csv");
    CHECK(series.rfind("tick,", 0) == 0);
    CHECK(std::count(series.begin(), series.end(), '\n') == 5); // header + 4 ticks
}

TEST_CASE("cmd_run maps config problems to exit 2") {
    TempDir dir;
    RunManifest manifest;
    manifest.out_dir = dir.path.string();

    SUBCASE("missing config file") {
        manifest.config_path = (dir.path / "nope.ini").string();
        CHECK(cmd_run(manifest) == kExitConfig);
    }
    SUBCASE("duration not divisible by tick") {
        manifest.config_path = write(dir.path / "bad.ini",
                                     "[sim]\nduration = 1000\ntick = 300\n"
                                     "[fleet]\npm_type1 = 1\nvm_1_1 = 1\n");
        CHECK(cmd_run(manifest) == kExitConfig);
    }
    SUBCASE("missing workload file") {
        manifest.config_path = write(dir.path / "tr.ini",
                                     "[fleet]\npm_type1 = 1\nvm_1_1 = 1\n"
                                     "[workload]\nmode = traces\nprefix = " +
                                         (dir.path / "absent").string() + "\n");
        CHECK(cmd_run(manifest) == kExitConfig);
    }
    SUBCASE("infeasible placement") {
        manifest.config_path = write(dir.path / "infeasible.ini",
                                     "[fleet]\npm_type1 = 1\nvm_2_3 = 1\n");
        CHECK(cmd_run(manifest) == kExitConfig);
    }
}

TEST_CASE("cmd_compare produces one row per case and policy") {
    TempDir dir;
    RunManifest manifest;
    manifest.out_dir = (dir.path / "out").string();
    std::string case1 = write(dir.path / "case1.ini", kSmallRun);
    std::string case2 = write(dir.path / "case2.ini",
                              "[sim]\nduration = 1200\ntick = 300\n"
                              "[fleet]\npm_type1 = 4\nvm_random = 4\n");

    CHECK(cmd_compare({case1, case2}, manifest, {"drs", "ecocloud", "nfv"}) == kExitOk);
    std::string csv = slurp(dir.path / "out" / "comparison.csv");
    CHECK(csv.rfind("case,policy,energy_kwh,migrations,error\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7); // header + 2*3 rows
    CHECK(csv.find("case1,drs,") != std::string::npos);
    CHECK(csv.find("case2,nfv,") != std::string::npos);

    SUBCASE("duplicate policies are de-duplicated") {
        CHECK(cmd_compare({case1}, manifest, {"drs", "drs", "nfv"}) == kExitOk);
        std::string dedup = slurp(dir.path / "out" / "comparison.csv");
        CHECK(std::count(dedup.begin(), dedup.end(), '\n') == 3);
    }
    SUBCASE("fewer than two policies is a usage error") {
        CHECK(cmd_compare({case1}, manifest, {"nfv"}) == kExitConfig);
        CHECK(cmd_compare({case1}, manifest, {"nfv", "nfv"}) == kExitConfig);
    }
    SUBCASE("unknown policy name is a usage error") {
        CHECK(cmd_compare({case1}, manifest, {"nfv", "vmotion"}) == kExitConfig);
    }
}

TEST_CASE("cmd_gen_workload --diurnal emits the day profile") {
    TempDir dir;
    GenWorkloadOptions opts;
    opts.name = "day1";
    opts.out_dir = dir.path.string();
    opts.diurnal = true;

    CHECK(cmd_gen_workload(opts) == kExitOk);
    LoadTrace cpu = load_trace_file((dir.path / "day1.cpu").string(), Resource::cpu);
    REQUIRE(cpu.values.size() == 24);
    CHECK(cpu.values[0] == 30);
    CHECK(cpu.values[1] == 30);
    CHECK(cpu.values[2] == 10);
    CHECK(cpu.values[3] == 10);
    CHECK(cpu.values[4] == 10);
    CHECK(cpu.values[5] == 10);
    CHECK(cpu.interval_len == 3600);

    // every emitted file re-parses
    CHECK_NOTHROW(load_trace_set((dir.path / "day1").string()));
}

TEST_CASE("cmd_gen_workload distribution mode is seed-deterministic") {
    TempDir dir;
    GenWorkloadOptions opts;
    opts.name = "gen";
    opts.out_dir = (dir.path / "a").string();
    opts.spec.task_count = 40;
    opts.spec.uniform_lo = 0.0;
    opts.spec.uniform_hi = 100.0;
    opts.spec.seed = 123;
    CHECK(cmd_gen_workload(opts) == kExitOk);

    GenWorkloadOptions again = opts;
    again.out_dir = (dir.path / "b").string();
    CHECK(cmd_gen_workload(again) == kExitOk);

    for (const char* suffix : {".cpu", ".mem", ".disk", ".bw"}) {
        std::string a = slurp(dir.path / "a" / ("gen" + std::string(suffix)));
        std::string b = slurp(dir.path / "b" / ("gen" + std::string(suffix)));
        CHECK(a == b);
        CHECK(!a.empty());
    }

    TraceSet set = load_trace_set((dir.path / "a" / "gen").string());
    CHECK(set.cpu.values.size() == 40);
    for (int v : set.cpu.values) {
        CHECK(v >= 0);
        CHECK(v <= 100);
    }
    // cpu-intensive weighting damps the io columns
    int max_disk = 0;
    for (int v : set.disk.values) max_disk = std::max(max_disk, v);
    CHECK(max_disk <= 20); // 0.2 weight on a 100-percent scale

    SUBCASE("count 0 leaves unreadable header-only files") {
        GenWorkloadOptions empty = opts;
        empty.name = "empty";
        empty.out_dir = dir.path.string();
        empty.spec.task_count = 0;
        CHECK(cmd_gen_workload(empty) == kExitOk); // warns, still writes
        CHECK_THROWS_AS(load_trace_file((dir.path / "empty.cpu").string(), Resource::cpu),
                        EmptyTrace);
    }
}

TEST_CASE("cmd_validate_config echoes the effective configuration") {
    TempDir dir;
    RunManifest manifest;
    manifest.config_path = write(dir.path / "v.ini", kSmallRun);
    CHECK(cmd_validate_config(manifest) == kExitOk);

    manifest.config_path = write(dir.path / "broken.ini", "[policy]\nname = nfv\n");
    CHECK(cmd_validate_config(manifest) == kExitConfig); // no PMs configured
}

TEST_CASE("NFVSIM_SEED is the fallback when the config has no seed") {
    TempDir dir;
    RunManifest manifest;
    manifest.config_path = write(dir.path / "noseed.ini",
                                 "[sim]\nduration = 600\ntick = 300\n"
                                 "[fleet]\npm_type1 = 2\nvm_1_1 = 2\n");
    manifest.out_dir = (dir.path / "out").string();

    ::setenv("NFVSIM_SEED", "77", 1);
    CHECK(cmd_run(manifest) == kExitOk);
    ::unsetenv("NFVSIM_SEED");
    CHECK(slurp(dir.path / "out" / "summary.txt").find("sim.seed = 77") != std::string::npos);

    SUBCASE("the --seed override still wins") {
        ::setenv("NFVSIM_SEED", "77", 1);
        manifest.seed_override = 5;
        CHECK(cmd_run(manifest) == kExitOk);
        ::unsetenv("NFVSIM_SEED");
        CHECK(slurp(dir.path / "out" / "summary.txt").find("sim.seed = 5") != std::string::npos);
    }
}

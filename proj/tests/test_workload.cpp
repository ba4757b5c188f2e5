#include <doctest.h>

#include "nfvsim/errors.hpp"
#include "nfvsim/workload.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nfvsim;

TEST_CASE("parse_trace reads one value per non-blank line") {
    std::istringstream in("40\n10\n");
    LoadTrace t = parse_trace(in, Resource::cpu);
    CHECK(t.values == std::vector<int>{40, 10});
    CHECK(t.interval_len == 300); // default

    std::istringstream idle("0\n0\n0\n");
    CHECK(parse_trace(idle, Resource::cpu).values == std::vector<int>{0, 0, 0});

    std::istringstream blanks("30\n\n  \n70\n");
    CHECK(parse_trace(blanks, Resource::cpu).values == std::vector<int>{30, 70});
}

TEST_CASE("parse_trace header and error handling") {
    SUBCASE("interval header comment") {
        std::istringstream in("# interval=3600\n# generated\n50\n");
        LoadTrace t = parse_trace(in, Resource::mem);
        CHECK(t.interval_len == 3600);
        CHECK(t.values == std::vector<int>{50});
    }
    SUBCASE("value out of range carries the line number") {
        std::istringstream in("150\n");
        CHECK_THROWS_WITH_AS(parse_trace(in, Resource::cpu),
                             doctest::Contains("line 1"), RangeError);
        std::istringstream in2("10\n20\n101\n");
        try {
            parse_trace(in2, Resource::cpu);
            FAIL("expected RangeError");
        } catch (const RangeError& e) {
            CHECK(e.line == 3);
        }
    }
    SUBCASE("non-numeric line is a parse error") {
        std::istringstream in("10\nabc\n");
        try {
            parse_trace(in, Resource::cpu);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
        }
    }
    SUBCASE("comment after data is rejected") {
        std::istringstream in("10\n# late comment\n");
        CHECK_THROWS_AS(parse_trace(in, Resource::cpu), ParseError);
    }
    SUBCASE("empty input") {
        std::istringstream in("");
        CHECK_THROWS_AS(parse_trace(in, Resource::cpu), EmptyTrace);
        std::istringstream only_comments("# interval=60\n");
        CHECK_THROWS_AS(parse_trace(only_comments, Resource::cpu), EmptyTrace);
    }
}

TEST_CASE("trace write -> parse -> write is byte-identical") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        LoadTrace t;
        t.resource = Resource::disk;
        t.interval_len = 1 + static_cast<std::int64_t>(rng.bounded(7200));
        std::size_t n = 1 + rng.bounded(50);
        for (std::size_t i = 0; i < n; ++i)
            t.values.push_back(static_cast<int>(rng.bounded(101)));

        std::string first = render_trace(t);
        std::istringstream in(first);
        LoadTrace reparsed = parse_trace(in, Resource::disk);
        CHECK(render_trace(reparsed) == first);
        CHECK(reparsed.values == t.values);
        CHECK(reparsed.interval_len == t.interval_len);
    }
}

TEST_CASE("trace set round-trips through the filesystem") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "nfvsim_trace_test";
    fs::create_directories(dir);
    std::string prefix = (dir / "wl").string();

    TraceSet set = diurnal_profile();
    write_trace_set(set, prefix);
    TraceSet back = load_trace_set(prefix);
    CHECK(back.cpu.values == set.cpu.values);
    CHECK(back.mem.values == set.mem.values);
    CHECK(back.disk.values == set.disk.values);
    CHECK(back.net.values == set.net.values);
    CHECK(back.cpu.interval_len == 3600);

    CHECK_THROWS_AS(load_trace_set((dir / "missing").string()), SimError);
    fs::remove_all(dir);
}

TEST_CASE("diurnal profile expands the eight day periods to hourly values") {
    TraceSet set = diurnal_profile();
    REQUIRE(set.cpu.values.size() == 24);
    REQUIRE(set.mem.values.size() == 24);

    // period boundaries
    CHECK(set.cpu.values[0] == 30);
    CHECK(set.cpu.values[1] == 30);
    CHECK(set.cpu.values[2] == 10);
    CHECK(set.cpu.values[5] == 10);
    CHECK(set.cpu.values[6] == 30);
    CHECK(set.cpu.values[9] == 70);  // hour 9 sits in 8-12
    CHECK(set.cpu.values[13] == 60);
    CHECK(set.cpu.values[17] == 50);
    CHECK(set.cpu.values[20] == 90); // daily peak period 18-23
    CHECK(set.cpu.values[22] == 90);
    CHECK(set.cpu.values[23] == 50);

    CHECK(set.mem.values[0] == 30);
    CHECK(set.mem.values[3] == 20);
    CHECK(set.mem.values[10] == 40);
    CHECK(set.mem.values[20] == 50);

    for (int h = 0; h < 24; ++h) {
        CHECK(set.disk.values[static_cast<std::size_t>(h)] == 20);
        CHECK(set.net.values[static_cast<std::size_t>(h)] == 20);
    }
    CHECK(set.cpu.interval_len == 3600);
}

TEST_CASE("generate_nfvlets honors count, bounds and determinism") {
    GeneratorSpec spec;
    spec.dist = LengthDistribution::uniform;
    spec.uniform_lo = 1e3;
    spec.uniform_hi = 1e4;
    spec.task_count = 100;
    spec.app_type = AppType::cpu_intensive;
    spec.seed = 7;

    Rng rng(spec.seed);
    std::vector<Nfvlet> tasks = generate_nfvlets(spec, rng);
    REQUIRE(tasks.size() == 100);
    for (const Nfvlet& t : tasks) {
        CHECK(t.length_mi >= 1e3);
        CHECK(t.length_mi <= 1e4);
        CHECK(t.remaining_mi == t.length_mi);
        CHECK(t.w_cpu == doctest::Approx(1.0));
        CHECK(t.w_disk == doctest::Approx(0.2));
    }
    for (std::size_t i = 0; i < tasks.size(); ++i)
        CHECK(tasks[i].id == static_cast<int>(i));

    SUBCASE("same spec and seed reproduce the same lengths") {
        Rng rng2(spec.seed);
        std::vector<Nfvlet> again = generate_nfvlets(spec, rng2);
        REQUIRE(again.size() == tasks.size());
        for (std::size_t i = 0; i < tasks.size(); ++i)
            CHECK(again[i].length_mi == tasks[i].length_mi);
    }

    SUBCASE("zero count gives an empty list") {
        GeneratorSpec empty = spec;
        empty.task_count = 0;
        Rng r(1);
        CHECK(generate_nfvlets(empty, r).empty());
    }

    SUBCASE("app types set the load weights") {
        LoadFractions io = app_type_weights(AppType::io_intensive);
        CHECK(io.cpu == doctest::Approx(0.2));
        CHECK(io.disk == doctest::Approx(1.0));
        CHECK(io.net == doctest::Approx(1.0));
        LoadFractions hybrid = app_type_weights(AppType::hybrid);
        CHECK(hybrid.cpu == doctest::Approx(0.6));
        CHECK(hybrid.mem == doctest::Approx(0.6));
    }

    SUBCASE("invalid distribution parameters are rejected") {
        GeneratorSpec bad = spec;
        bad.uniform_hi = -1.0;
        Rng r(1);
        CHECK_THROWS_AS(generate_nfvlets(bad, r), SpecError);
        bad = spec;
        bad.dist = LengthDistribution::normal;
        bad.normal_sigma = -0.5;
        CHECK_THROWS_AS(generate_nfvlets(bad, r), SpecError);
        bad.normal_sigma = 0.0;
        bad.normal_mean = -10.0;
        CHECK_THROWS_AS(generate_nfvlets(bad, r), SpecError);
        bad = spec;
        bad.dist = LengthDistribution::poisson;
        bad.poisson_mean = 0.0;
        CHECK_THROWS_AS(generate_nfvlets(bad, r), SpecError);
        bad = spec;
        bad.task_count = -1;
        CHECK_THROWS_AS(generate_nfvlets(bad, r), SpecError);
    }
}

TEST_CASE("generated lengths are positive for every distribution") {
    for (LengthDistribution dist : {LengthDistribution::uniform, LengthDistribution::normal,
                                    LengthDistribution::poisson}) {
        GeneratorSpec spec;
        spec.dist = dist;
        spec.task_count = 500;
        spec.normal_mean = 100.0; // small mean so negatives would show up
        spec.normal_sigma = 200.0;
        spec.poisson_mean = 3.0;
        Rng rng(11);
        for (const Nfvlet& t : generate_nfvlets(spec, rng)) CHECK(t.length_mi > 0.0);
    }
}

TEST_CASE("nfvlet_runtime reproduces the four load compositions") {
    // C1..C4: VM1=100 MIPS, VM2=20 MIPS, NFVlet1=150 MI, NFVlet2=80 MI on a
    // 1000 MIPS host.
    NfvletRuntime c1 = nfvlet_runtime(150.0, 100.0, 1000.0);
    CHECK(c1.duration_s == doctest::Approx(1.5));
    CHECK(c1.pm_cpu_load == doctest::Approx(0.10));

    NfvletRuntime c2 = nfvlet_runtime(80.0, 100.0, 1000.0);
    CHECK(c2.duration_s == doctest::Approx(0.8));
    CHECK(c2.pm_cpu_load == doctest::Approx(0.10));

    NfvletRuntime c3 = nfvlet_runtime(150.0, 20.0, 1000.0);
    CHECK(c3.duration_s == doctest::Approx(7.5));
    CHECK(c3.pm_cpu_load == doctest::Approx(0.02));

    NfvletRuntime c4 = nfvlet_runtime(80.0, 20.0, 1000.0);
    CHECK(c4.duration_s == doctest::Approx(4.0));
    CHECK(c4.pm_cpu_load == doctest::Approx(0.02));

    CHECK(nfvlet_runtime(0.0, 50.0, 100.0).duration_s == 0.0);
    CHECK_THROWS_AS(nfvlet_runtime(10.0, 0.0, 100.0), ZeroCapacity);
}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfvsim/catalog.hpp"
#include "nfvsim/energy.hpp"
#include "nfvsim/machine.hpp"
#include "nfvsim/policy.hpp"
#include "nfvsim/workload.hpp"

namespace nfvsim {

enum class WorkloadMode { diurnal, traces, generator };

struct SimConfig {
    std::int64_t duration_ms{86'400'000};
    std::int64_t tick_ms{300'000};
    std::uint64_t seed{0};
    double cu_to_mips{1000.0};
    int cooldown_ticks{3};
    bool start_powered_on{false};

    MachineCatalog catalog = default_catalog();
    std::map<int, int> pm_counts;  // pm_type index -> count
    std::map<int, int> vm_counts;  // vm_type index -> count
    int vm_random_count{0};        // > 0: sample that many VM types from the seed

    WorkloadMode workload_mode{WorkloadMode::diurnal};
    std::string trace_prefix; // traces mode
    GeneratorSpec generator;  // generator (MI) mode

    std::string policy{"nfv"}; // drs | ecocloud | nfv
    PolicyParams params;
    PowerModelConfig power;
    std::optional<double> p_min_override; // global override of the catalog values
    std::optional<double> p_max_override;
    std::map<int, double> p_min_per_type;
    std::map<int, double> p_max_per_type;

    void validate() const; // throws ConfigError / SpecError
};

struct TimePoint {
    long tick{0};
    double seconds{0.0};
    double cumulative_kwh{0.0};
    double mean_cpu_util{0.0};
    double imbalance_g{0.0};
    long migrations_so_far{0};
};

struct PmResult {
    int id{0};
    int type{0};
    double energy_kwh{0.0};
    double on_time_s{0.0};
};

struct VmResult {
    int id{0};
    int type{0};
    double energy_kwh{0.0};
    int migrations{0};
};

struct SimReport {
    double total_energy_kwh{0.0};
    long migration_count{0};
    long ticks{0};
    double sim_seconds{0.0};
    int pms_ever_on{0};
    std::uint64_t delta_u_clamp_warnings{0};
    std::vector<PmResult> per_pm;
    std::vector<VmResult> per_vm;
    std::vector<TimePoint> time_series;
    std::vector<std::pair<std::string, std::string>> config_echo;
};

// Single-threaded fixed-tick simulation. Construction builds the fleet and
// realizes the workload; run() is initial_allocation() plus duration/tick
// steps. Step-level access stays public so scenarios can be driven and
// inspected mid-run.
class Simulation {
public:
    explicit Simulation(SimConfig cfg);

    void initial_allocation();
    void step();
    SimReport run();

    SimReport make_report() const;
    const Fleet& fleet() const { return fleet_; }
    long tick() const { return tick_; }
    long total_ticks() const { return total_ticks_; }
    long migrations() const { return migrations_; }
    const SimConfig& config() const { return cfg_; }

private:
    void build_fleet();
    void realize_workload();
    void refresh_trace_loads();
    void refresh_mi_loads();
    void advance_nfvlets();
    void run_policy_triggers();
    void run_drs_trigger();
    void run_threshold_triggers();
    void integrate_energy();
    void apply_power_offs();
    void append_metrics();
    void audit() const;

    // What a policy's score argument measures: the instantaneous load (DRS
    // balances measured utilization) or the committed reservation fraction
    // (the consolidation policies pack capacity).
    enum class UtilBasis { load, reservation };

    int place_initial(int vm_id);
    std::vector<PmCandidate> policy_candidates(int exclude_pm, double vm_add_cu) const;
    int open_new_host(const ResourceVector& vm_demand, int exclude_pm) const;
    void apply_migration(int vm_id, int source_pm, int target_pm);
    std::vector<PmCandidate> build_candidates(bool powered_on_pool, int exclude_pm,
                                              UtilBasis basis) const;
    bool vm_movable(int vm_id) const;
    double pm_p_min(const PhysicalMachine& pm) const { return pm.p_min; }

    SimConfig cfg_;
    Fleet fleet_;
    TraceSet traces_;
    bool trace_mode_{true};
    Rng rng_;
    double tick_s_{0.0};
    long tick_{0};
    long total_ticks_{0};
    long migrations_{0};
    bool allocated_{false};
    std::vector<long> cooldown_until_;
    std::vector<int> next_pending_;     // per-VM index into attached_nfvlets
    std::vector<char> mi_busy_;         // per-VM: had pending work at tick start
    std::vector<int> pending_off_;      // PMs emptied by consolidation this tick
    std::vector<double> prev_pm_energy_;
    std::vector<char> ever_on_;
    std::uint64_t clamp_warnings_{0};
    std::vector<TimePoint> series_;
};

SimReport run(const SimConfig& cfg);

struct CompareCase {
    std::string name;
    SimConfig config;
};

struct ComparisonCell {
    std::string case_name;
    std::string policy;
    double energy_kwh{0.0};
    long migrations{0};
    bool failed{false};
    std::string error;
};

// Runs every policy on every case's identically-seeded workload realization.
std::vector<ComparisonCell> compare(const std::vector<CompareCase>& cases,
                                    const std::vector<std::string>& policies);

bool known_policy(const std::string& name);

// Byte-stable report renderings (golden-file friendly).
std::string render_summary(const SimReport& report);
std::string render_timeseries(const SimReport& report);
std::string render_comparison(const std::vector<ComparisonCell>& cells);

} // namespace nfvsim

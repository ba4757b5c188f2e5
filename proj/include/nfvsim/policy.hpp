#pragma once

#include <span>
#include <vector>

#include "nfvsim/machine.hpp"
#include "nfvsim/rng.hpp"

namespace nfvsim {

enum class TieBreak { lowest_id, random_seeded };

struct PolicyParams {
    double T_a{0.9};          // upper utilization threshold
    double T_b{0.2};          // lower bound
    int p{2};                 // EcoCloud exponent, one of {2, 3, 4}
    double alpha{2.0};        // Beta shape
    double beta{2.0};         // Beta shape
    double drs_threshold{0.1}; // imbalance bound g*
    TieBreak tie_break{TieBreak::lowest_id};
    bool stochastic{false};   // Bernoulli sampling variant of probabilistic placement

    void validate() const; // throws SpecError
};

struct MigrationDecision {
    int vm{-1};
    int source_pm{-1};
    int target_pm{-1};
    long tick{0};
};

// One placement candidate as the engine snapshots it: current effective CPU
// use plus the reservation residual that gates feasibility.
struct PmCandidate {
    int pm_id{-1};
    double cpu_cap_cu{0.0};
    double cpu_used_cu{0.0};       // load-modulated
    ResourceVector residual;       // reservation-based
};

inline double candidate_util(const PmCandidate& c) {
    return c.cpu_cap_cu > 0.0 ? c.cpu_used_cu / c.cpu_cap_cu : 0.0;
}

using ScoreFn = double (*)(double utilization, const PolicyParams& params);

// Lowest-current-utilization placement over feasible candidates. Throws
// PlacementFailed when nothing fits.
int drs_place(const ResourceVector& vm_demand, std::span<const PmCandidate> pms,
              const PolicyParams& params, Rng* rng = nullptr);

// Population standard deviation of the given utilizations. Throws NoHosts on
// an empty list.
double drs_imbalance(std::span<const double> utils);

// Snapshot the DRS greedy rebalancer plans against.
struct DrsState {
    struct Pm {
        int id{-1};
        double cpu_cap_cu{0.0};
        double cpu_used_cu{0.0};
        ResourceVector residual;
    };
    struct Vm {
        int id{-1};
        int pm_index{-1};    // index into pms
        double cpu_used_cu{0.0};
        ResourceVector demand;
        bool movable{true};
    };
    std::vector<Pm> pms; // powered-on hosts only
    std::vector<Vm> vms; // VMs placed on those hosts
};

// Greedy rebalancing: while g exceeds the threshold, move the largest movable
// VM off the most-loaded host to the lowest-loaded feasible host, accepting
// only moves that strictly decrease g. Stops on the first non-improving
// candidate and never emits more decisions than there are VMs.
std::vector<MigrationDecision> drs_migrate(DrsState state, const PolicyParams& params,
                                           long tick, Rng* rng = nullptr);

// f_a(u) = u^p (T_a - u) / M_p with M_p = p^p/(p+1)^(p+1) * T_a^(p+1);
// 0 outside (0, T_a).
double ecocloud_score(double u, const PolicyParams& params);

// F(x) = clamp(1 - f(x; alpha, beta)/3, 0, 1) with f the Beta density.
double nfv_score(double x, const PolicyParams& params);

// Scores each feasible candidate's post-placement CPU utilization and returns
// the argmax (or, with params.stochastic, a Bernoulli-sampled accepter).
// vm_add_cu is the effective CPU the VM would add. Throws PlacementFailed.
int probabilistic_place(const ResourceVector& vm_demand, double vm_add_cu,
                        std::span<const PmCandidate> pms, ScoreFn score,
                        const PolicyParams& params, Rng* rng = nullptr);

// True iff the host needs attention: util above T_a, or hosting at least one
// VM while util is below T_b.
bool threshold_trigger(double pm_util, std::size_t hosted_vm_count, const PolicyParams& params);

enum class SelectMode {
    over_threshold,  // single VM with the largest CPU demand
    under_threshold, // every hosted VM, ascending CPU demand (evacuation order)
};

// Throws NoVm when the host is empty. Ties resolve to the lowest VM id.
std::vector<int> select_vms(const Fleet& fleet, int pm_id, SelectMode mode);

} // namespace nfvsim

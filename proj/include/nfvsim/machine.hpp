#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "nfvsim/resources.hpp"

namespace nfvsim {

// Per-resource load fractions in [0, 1] of a VM's catalog demand. Set every
// tick from the attached trace (trace mode) or the running NFVlet's weights
// (MI mode).
struct LoadFractions {
    double cpu{0.0};
    double mem{0.0};
    double disk{0.0};
    double net{0.0};
};

struct PhysicalMachine {
    int id{0};
    int pm_type{0};
    ResourceVector capacity;
    double p_min{175.0};
    double p_max{250.0};
    double mips{0.0};
    bool powered_on{false};
    std::vector<int> hosted_vms; // insertion order, no duplicates
    double power_on_time{0.0};   // seconds accumulated while on
    double energy_joules{0.0};
    // Share of energy_joules attributed to VMs (cpu_share mode), kept for the
    // per-tick attribution-closure audit.
    double attributed_joules{0.0};
};

struct VirtualMachine {
    int id{0};
    int vm_type{0};
    ResourceVector demand;
    double mips{0.0};
    std::optional<int> host;
    std::vector<int> attached_nfvlets; // ascending nfvlet ids
    int migration_count{0};
    double energy_joules{0.0};
    LoadFractions load;
};

struct Nfvlet {
    int id{0};
    double length_mi{0.0};
    int vm{-1}; // owning VM for the NFVlet's entire life
    double remaining_mi{0.0};
    std::optional<int> load_profile; // trace-set index, when trace-driven
    // Per-resource load weights while running (fractions of the owning VM's
    // capacity), set by the generator from the application type.
    double w_cpu{1.0};
    double w_mem{0.2};
    double w_disk{0.2};
    double w_net{0.2};
};

struct Fleet {
    std::vector<PhysicalMachine> pms; // indexed by id
    std::vector<VirtualMachine> vms;  // indexed by id
    std::vector<Nfvlet> nfvlets;      // indexed by id
};

// Sum of hosted VM catalog demands.
ResourceVector hosted_demand(const Fleet& fleet, const PhysicalMachine& pm);
ResourceVector residual_capacity(const Fleet& fleet, const PhysicalMachine& pm);

// True iff pm is powered on and its residual capacity covers vm's demand in
// all four components.
bool validate_placement(const Fleet& fleet, int vm_id, int pm_id);

// Reservation-based utilization, component-wise (cpu, mem, disk, net).
// Throws ZeroCapacity if a capacity component is zero.
std::array<double, 4> pm_utilization(const Fleet& fleet, int pm_id);

// vm_cpu / pm_cpu, clamped to [0, 1]; increments *clamp_warnings when the
// ratio exceeds 1. Throws ZeroCapacity when pm_cpu is zero.
double delta_u(double vm_cpu, double pm_cpu, std::uint64_t* clamp_warnings = nullptr);

// Load-modulated CPU use and utilization (what the scheduling policies see).
double effective_cpu_used_cu(const Fleet& fleet, const PhysicalMachine& pm);
double effective_cpu_util(const Fleet& fleet, const PhysicalMachine& pm);
// All four load-modulated utilization fractions.
LoadFractions effective_utilization(const Fleet& fleet, const PhysicalMachine& pm);

// Placement mutators. place_vm requires the target to pass validate_placement
// and the VM to be unplaced; remove_vm detaches the VM from its host.
void place_vm(Fleet& fleet, int vm_id, int pm_id);
void remove_vm(Fleet& fleet, int vm_id);

} // namespace nfvsim

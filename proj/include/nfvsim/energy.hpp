#pragma once

#include <span>

#include "nfvsim/machine.hpp"

namespace nfvsim {

enum class PowerMode {
    multi_dimensional, // P = c0 + c_cpu*U_cpu + c_mem*U_mem + c_disk*U_disk + c_net*U_net
    cpu_share,         // P = p_min + (p_max - p_min) * sum of per-VM CPU shares
};

// One instantaneous utilization reading for the multi-dimensional model.
// u_cpu is a percentage; the other components are absolute activity rates
// (operations/s, KB/s, KB/s).
struct UtilizationSample {
    double u_cpu{0.0};
    double u_mem{0.0};
    double u_disk{0.0};
    double u_net{0.0};
    double timestamp{0.0};
};

struct PowerModelConfig {
    PowerMode mode{PowerMode::cpu_share};
    double c0{14.5};
    double c_cpu{0.2};
    double c_mem{4.5e-8};
    double c_disk{0.003};
    double c_net{3.1e-8};
    // Absolute rates corresponding to a 100% trace value, used to map trace
    // percentages onto the multi-dimensional model's inputs. The original
    // blade-server benchmark units are unpublished, so these are explicit
    // configuration.
    double mem_max_rate{1e9};  // operations/s
    double disk_max_rate{1e5}; // KB/s
    double net_max_rate{1e5};  // KB/s
};

// Instantaneous power in watts. Throws InvalidSample on negative components
// or u_cpu outside [0, 100].
double power_multidim(const UtilizationSample& sample, const PowerModelConfig& cfg);

// Energy one VM draws over [t0, t1] at a fixed CPU share:
// (p_max - p_min) * (t1 - t0) * cpu_share. Throws NegativeInterval.
double vm_energy(double p_max, double p_min, double t0, double t1, double cpu_share);

// Host energy: p_min * power_on_time plus the hosted VMs' contributions.
double pm_energy(const PhysicalMachine& pm, std::span<const double> vm_energies);

// Total over all hosts.
double datacenter_energy(std::span<const double> pm_energies);

// One VM's CPU share of a host for energy attribution this tick.
struct VmShare {
    int vm_id{-1};
    double share{0.0};
};

// Integrates one tick of piecewise-constant power into pm (and, in cpu_share
// mode, into each listed VM). Advances pm.power_on_time. Returns the joules
// added to the PM. Requires pm.powered_on.
double integrate_tick(Fleet& fleet, int pm_id, std::span<const VmShare> shares,
                      const UtilizationSample& sample, double tick_len,
                      const PowerModelConfig& cfg);

constexpr double joules_to_kwh(double joules) { return joules / 3.6e6; }

} // namespace nfvsim

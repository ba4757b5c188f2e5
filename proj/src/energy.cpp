#include "nfvsim/energy.hpp"

#include <numeric>
#include <string>

#include "nfvsim/errors.hpp"

namespace nfvsim {

double power_multidim(const UtilizationSample& sample, const PowerModelConfig& cfg) {
    if (sample.u_cpu < 0.0 || sample.u_cpu > 100.0)
        throw InvalidSample("u_cpu out of [0,100]: " + std::to_string(sample.u_cpu));
    if (sample.u_mem < 0.0 || sample.u_disk < 0.0 || sample.u_net < 0.0)
        throw InvalidSample("negative utilization component");
    return cfg.c0 + cfg.c_cpu * sample.u_cpu + cfg.c_mem * sample.u_mem +
           cfg.c_disk * sample.u_disk + cfg.c_net * sample.u_net;
}

double vm_energy(double p_max, double p_min, double t0, double t1, double cpu_share) {
    if (t1 < t0) throw NegativeInterval("vm_energy: t1 < t0");
    return (p_max - p_min) * (t1 - t0) * cpu_share;
}

double pm_energy(const PhysicalMachine& pm, std::span<const double> vm_energies) {
    double sum = std::accumulate(vm_energies.begin(), vm_energies.end(), 0.0);
    return pm.p_min * pm.power_on_time + sum;
}

double datacenter_energy(std::span<const double> pm_energies) {
    return std::accumulate(pm_energies.begin(), pm_energies.end(), 0.0);
}

double integrate_tick(Fleet& fleet, int pm_id, std::span<const VmShare> shares,
                      const UtilizationSample& sample, double tick_len,
                      const PowerModelConfig& cfg) {
    PhysicalMachine& pm = fleet.pms.at(pm_id);
    if (!pm.powered_on)
        throw InvariantViolation("integrate_tick on powered-off pm " + std::to_string(pm_id));
    if (tick_len < 0.0) throw NegativeInterval("integrate_tick: negative tick length");

    double added = 0.0;
    if (cfg.mode == PowerMode::cpu_share) {
        added = pm.p_min * tick_len;
        for (const VmShare& s : shares) {
            double e = vm_energy(pm.p_max, pm.p_min, 0.0, tick_len, s.share);
            fleet.vms.at(s.vm_id).energy_joules += e;
            pm.attributed_joules += e;
            added += e;
        }
    } else {
        added = power_multidim(sample, cfg) * tick_len;
    }
    pm.energy_joules += added;
    pm.power_on_time += tick_len;
    return added;
}

} // namespace nfvsim

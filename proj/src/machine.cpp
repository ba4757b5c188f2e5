#include "nfvsim/machine.hpp"

#include <algorithm>
#include <string>

#include "nfvsim/errors.hpp"

namespace nfvsim {

ResourceVector hosted_demand(const Fleet& fleet, const PhysicalMachine& pm) {
    ResourceVector total;
    for (int vm_id : pm.hosted_vms) total += fleet.vms.at(vm_id).demand;
    return total;
}

ResourceVector residual_capacity(const Fleet& fleet, const PhysicalMachine& pm) {
    return pm.capacity - hosted_demand(fleet, pm);
}

bool validate_placement(const Fleet& fleet, int vm_id, int pm_id) {
    const PhysicalMachine& pm = fleet.pms.at(pm_id);
    if (!pm.powered_on) return false;
    return fleet.vms.at(vm_id).demand.fits_within(residual_capacity(fleet, pm));
}

std::array<double, 4> pm_utilization(const Fleet& fleet, int pm_id) {
    const PhysicalMachine& pm = fleet.pms.at(pm_id);
    const ResourceVector& cap = pm.capacity;
    if (cap.cpu_milli <= 0 || cap.memory_mb <= 0 || cap.storage_gb <= 0 || cap.bandwidth_mbit <= 0)
        throw ZeroCapacity("pm " + std::to_string(pm_id) + " has a zero capacity component");
    ResourceVector used = hosted_demand(fleet, pm);
    return {
        static_cast<double>(used.cpu_milli) / static_cast<double>(cap.cpu_milli),
        static_cast<double>(used.memory_mb) / static_cast<double>(cap.memory_mb),
        static_cast<double>(used.storage_gb) / static_cast<double>(cap.storage_gb),
        static_cast<double>(used.bandwidth_mbit) / static_cast<double>(cap.bandwidth_mbit),
    };
}

double delta_u(double vm_cpu, double pm_cpu, std::uint64_t* clamp_warnings) {
    if (pm_cpu <= 0.0) throw ZeroCapacity("delta_u: pm cpu capacity is zero");
    double ratio = vm_cpu / pm_cpu;
    if (ratio > 1.0) {
        if (clamp_warnings) ++*clamp_warnings;
        ratio = 1.0;
    }
    return ratio < 0.0 ? 0.0 : ratio;
}

double effective_cpu_used_cu(const Fleet& fleet, const PhysicalMachine& pm) {
    double used = 0.0;
    for (int vm_id : pm.hosted_vms) {
        const VirtualMachine& vm = fleet.vms.at(vm_id);
        used += vm.demand.cpu_cu() * vm.load.cpu;
    }
    return used;
}

double effective_cpu_util(const Fleet& fleet, const PhysicalMachine& pm) {
    if (pm.capacity.cpu_milli <= 0) throw ZeroCapacity("pm has zero cpu capacity");
    return effective_cpu_used_cu(fleet, pm) / pm.capacity.cpu_cu();
}

LoadFractions effective_utilization(const Fleet& fleet, const PhysicalMachine& pm) {
    const ResourceVector& cap = pm.capacity;
    if (cap.cpu_milli <= 0 || cap.memory_mb <= 0 || cap.storage_gb <= 0 || cap.bandwidth_mbit <= 0)
        throw ZeroCapacity("pm " + std::to_string(pm.id) + " has a zero capacity component");
    LoadFractions total;
    for (int vm_id : pm.hosted_vms) {
        const VirtualMachine& vm = fleet.vms.at(vm_id);
        total.cpu += vm.demand.cpu_cu() * vm.load.cpu / cap.cpu_cu();
        total.mem += static_cast<double>(vm.demand.memory_mb) * vm.load.mem /
                     static_cast<double>(cap.memory_mb);
        total.disk += static_cast<double>(vm.demand.storage_gb) * vm.load.disk /
                      static_cast<double>(cap.storage_gb);
        total.net += static_cast<double>(vm.demand.bandwidth_mbit) * vm.load.net /
                     static_cast<double>(cap.bandwidth_mbit);
    }
    return total;
}

void place_vm(Fleet& fleet, int vm_id, int pm_id) {
    VirtualMachine& vm = fleet.vms.at(vm_id);
    PhysicalMachine& pm = fleet.pms.at(pm_id);
    if (vm.host)
        throw InvariantViolation("vm " + std::to_string(vm_id) + " is already placed");
    if (!validate_placement(fleet, vm_id, pm_id))
        throw InvariantViolation("placement of vm " + std::to_string(vm_id) + " on pm " +
                                 std::to_string(pm_id) + " violates capacity");
    pm.hosted_vms.push_back(vm_id);
    vm.host = pm_id;
}

void remove_vm(Fleet& fleet, int vm_id) {
    VirtualMachine& vm = fleet.vms.at(vm_id);
    if (!vm.host)
        throw InvariantViolation("vm " + std::to_string(vm_id) + " is not placed");
    PhysicalMachine& pm = fleet.pms.at(*vm.host);
    auto it = std::find(pm.hosted_vms.begin(), pm.hosted_vms.end(), vm_id);
    if (it == pm.hosted_vms.end())
        throw InvariantViolation("vm " + std::to_string(vm_id) + " missing from host list");
    pm.hosted_vms.erase(it);
    vm.host.reset();
}

} // namespace nfvsim

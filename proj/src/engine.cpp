#include "nfvsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "nfvsim/config.hpp"
#include "nfvsim/errors.hpp"

namespace nfvsim {

void SimConfig::validate() const {
    if (duration_ms <= 0) throw ConfigError("duration must be > 0");
    if (tick_ms <= 0) throw ConfigError("tick must be > 0");
    if (duration_ms % tick_ms != 0)
        throw ConfigError("duration (" + std::to_string(duration_ms) +
                          " ms) is not divisible by tick (" + std::to_string(tick_ms) + " ms)");
    if (cu_to_mips <= 0.0) throw ConfigError("cu_mips must be > 0");
    if (cooldown_ticks < 0) throw ConfigError("cooldown_ticks must be >= 0");
    if (!known_policy(policy))
        throw ConfigError("unknown policy '" + policy + "' (valid: drs, ecocloud, nfv)");
    params.validate();

    long long pm_total = 0;
    for (const auto& [type, count] : pm_counts) {
        if (count < 0) throw ConfigError("negative PM count");
        if (type < 0 || type >= static_cast<int>(catalog.pm_types.size()))
            throw ConfigError("pm type index " + std::to_string(type) + " out of catalog range");
        pm_total += count;
    }
    if (pm_total == 0) throw ConfigError("no physical machines configured");
    for (const auto& [type, count] : vm_counts) {
        if (count < 0) throw ConfigError("negative VM count");
        if (type < 0 || type >= static_cast<int>(catalog.vm_types.size()))
            throw ConfigError("vm type index " + std::to_string(type) + " out of catalog range");
    }
    if (vm_random_count < 0) throw ConfigError("vm_random must be >= 0");
    if (vm_random_count > 0 && !vm_counts.empty())
        throw ConfigError("vm_random and explicit vm type counts are mutually exclusive");
    if (workload_mode == WorkloadMode::generator) generator.validate();
    if (workload_mode == WorkloadMode::traces && trace_prefix.empty())
        throw ConfigError("traces workload mode needs a prefix");
}

bool known_policy(const std::string& name) {
    return name == "drs" || name == "ecocloud" || name == "nfv";
}

Simulation::Simulation(SimConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
    cfg_.validate();
    tick_s_ = static_cast<double>(cfg_.tick_ms) / 1000.0;
    total_ticks_ = cfg_.duration_ms / cfg_.tick_ms;
    build_fleet();
    realize_workload();
    cooldown_until_.assign(fleet_.vms.size(), -1);
    prev_pm_energy_.assign(fleet_.pms.size(), 0.0);
    ever_on_.assign(fleet_.pms.size(), 0);
    if (cfg_.start_powered_on) {
        for (auto& pm : fleet_.pms) pm.powered_on = true;
        std::fill(ever_on_.begin(), ever_on_.end(), 1);
    }
}

void Simulation::build_fleet() {
    for (const auto& [type, count] : cfg_.pm_counts) {
        const PmTypeSpec& spec = cfg_.catalog.pm_types[static_cast<std::size_t>(type)];
        for (int i = 0; i < count; ++i) {
            PhysicalMachine pm;
            pm.id = static_cast<int>(fleet_.pms.size());
            pm.pm_type = type;
            pm.capacity = spec.capacity;
            pm.p_min = spec.p_min;
            pm.p_max = spec.p_max;
            if (cfg_.p_min_override) pm.p_min = *cfg_.p_min_override;
            if (cfg_.p_max_override) pm.p_max = *cfg_.p_max_override;
            if (auto it = cfg_.p_min_per_type.find(type); it != cfg_.p_min_per_type.end())
                pm.p_min = it->second;
            if (auto it = cfg_.p_max_per_type.find(type); it != cfg_.p_max_per_type.end())
                pm.p_max = it->second;
            pm.mips = spec.capacity.cpu_cu() * cfg_.cu_to_mips;
            fleet_.pms.push_back(pm);
        }
    }

    auto add_vm = [this](int type) {
        const VmTypeSpec& spec = cfg_.catalog.vm_types[static_cast<std::size_t>(type)];
        VirtualMachine vm;
        vm.id = static_cast<int>(fleet_.vms.size());
        vm.vm_type = type;
        vm.demand = spec.demand;
        vm.mips = spec.demand.cpu_cu() * cfg_.cu_to_mips;
        fleet_.vms.push_back(vm);
    };
    for (const auto& [type, count] : cfg_.vm_counts)
        for (int i = 0; i < count; ++i) add_vm(type);
    if (cfg_.vm_random_count > 0) {
        // Deal types from a balanced deck and shuffle the arrival order with
        // the run seed: totals per type stay fixed (and feasible) across
        // seeds, the packing order varies.
        int n = cfg_.vm_random_count;
        int types = static_cast<int>(cfg_.catalog.vm_types.size());
        std::vector<int> deck;
        deck.reserve(static_cast<std::size_t>(n));
        for (int t = 0; t < types; ++t) {
            int count = n / types + (t < n % types ? 1 : 0);
            deck.insert(deck.end(), static_cast<std::size_t>(count), t);
        }
        for (std::size_t i = deck.size() - 1; i > 0; --i)
            std::swap(deck[i], deck[static_cast<std::size_t>(rng_.bounded(i + 1))]);
        for (int type : deck) add_vm(type);
    }
}

void Simulation::realize_workload() {
    switch (cfg_.workload_mode) {
    case WorkloadMode::diurnal:
        traces_ = diurnal_profile();
        trace_mode_ = true;
        break;
    case WorkloadMode::traces:
        traces_ = load_trace_set(cfg_.trace_prefix);
        trace_mode_ = true;
        break;
    case WorkloadMode::generator: {
        trace_mode_ = false;
        GeneratorSpec spec = cfg_.generator;
        Rng gen_rng(spec.seed);
        fleet_.nfvlets = generate_nfvlets(spec, gen_rng);
        // round-robin over VMs in id order
        if (!fleet_.vms.empty()) {
            for (auto& task : fleet_.nfvlets) {
                int vm_id = task.id % static_cast<int>(fleet_.vms.size());
                task.vm = vm_id;
                fleet_.vms[static_cast<std::size_t>(vm_id)].attached_nfvlets.push_back(task.id);
            }
        }
        break;
    }
    }
    next_pending_.assign(fleet_.vms.size(), 0);
    mi_busy_.assign(fleet_.vms.size(), 0);
}

void Simulation::refresh_trace_loads() {
    auto value_at = [this](const LoadTrace& t) {
        std::int64_t t_ms = tick_ * cfg_.tick_ms;
        std::int64_t idx = (t_ms / (t.interval_len * 1000)) %
                           static_cast<std::int64_t>(t.values.size());
        return static_cast<double>(t.values[static_cast<std::size_t>(idx)]) / 100.0;
    };
    LoadFractions f;
    f.cpu = value_at(traces_.cpu);
    f.mem = value_at(traces_.mem);
    f.disk = value_at(traces_.disk);
    f.net = value_at(traces_.net);
    for (auto& vm : fleet_.vms) vm.load = f;
}

void Simulation::refresh_mi_loads() {
    for (auto& vm : fleet_.vms) {
        std::size_t head = static_cast<std::size_t>(next_pending_[static_cast<std::size_t>(vm.id)]);
        if (head < vm.attached_nfvlets.size()) {
            const Nfvlet& task = fleet_.nfvlets[static_cast<std::size_t>(vm.attached_nfvlets[head])];
            vm.load = {task.w_cpu, task.w_mem, task.w_disk, task.w_net};
            mi_busy_[static_cast<std::size_t>(vm.id)] = 1;
        } else {
            vm.load = {};
            mi_busy_[static_cast<std::size_t>(vm.id)] = 0;
        }
    }
}

void Simulation::advance_nfvlets() {
    if (trace_mode_) return;
    for (auto& vm : fleet_.vms) {
        double budget_mi = vm.mips * tick_s_;
        auto& head = next_pending_[static_cast<std::size_t>(vm.id)];
        while (budget_mi > 0.0 && head < static_cast<int>(vm.attached_nfvlets.size())) {
            Nfvlet& task =
                fleet_.nfvlets[static_cast<std::size_t>(vm.attached_nfvlets[static_cast<std::size_t>(head)])];
            double used = std::min(budget_mi, task.remaining_mi);
            task.remaining_mi -= used;
            budget_mi -= used;
            if (task.remaining_mi <= 0.0) {
                task.remaining_mi = 0.0;
                ++head;
            } else {
                break;
            }
        }
    }
}

bool Simulation::vm_movable(int vm_id) const {
    return tick_ >= cooldown_until_[static_cast<std::size_t>(vm_id)];
}

std::vector<PmCandidate> Simulation::build_candidates(bool powered_on_pool, int exclude_pm,
                                                      UtilBasis basis) const {
    std::vector<PmCandidate> out;
    for (const auto& pm : fleet_.pms) {
        if (pm.id == exclude_pm) continue;
        if (pm.powered_on != powered_on_pool) continue;
        if (std::find(pending_off_.begin(), pending_off_.end(), pm.id) != pending_off_.end())
            continue;
        PmCandidate c;
        c.pm_id = pm.id;
        c.cpu_cap_cu = pm.capacity.cpu_cu();
        if (pm.powered_on) {
            c.cpu_used_cu = basis == UtilBasis::load
                                ? effective_cpu_used_cu(fleet_, pm)
                                : hosted_demand(fleet_, pm).cpu_cu();
            c.residual = residual_capacity(fleet_, pm);
        } else {
            c.cpu_used_cu = 0.0;
            c.residual = pm.capacity;
        }
        out.push_back(c);
    }
    return out;
}

int Simulation::open_new_host(const ResourceVector& vm_demand, int exclude_pm) const {
    // Which SKU to power on is a capacity decision, not a utilization score:
    // prefer the host the VM fills most (smallest feasible CPU capacity) so
    // large-memory types stay free for the VMs that need them.
    int best = -1;
    double best_cap = 0.0;
    for (const PmCandidate& c : build_candidates(false, exclude_pm, UtilBasis::reservation)) {
        if (!vm_demand.fits_within(c.residual)) continue;
        if (best < 0 || c.cpu_cap_cu < best_cap) {
            best = c.pm_id;
            best_cap = c.cpu_cap_cu;
        }
    }
    if (best < 0) throw PlacementFailed(-1, "no powered-off host fits");
    return best;
}

// EcoCloud's assignment function is only defined on [0, T_a]: a host that the
// placement would push past the upper threshold does not bid. The Beta-score
// policy has no such domain restriction.
std::vector<PmCandidate> Simulation::policy_candidates(int exclude_pm, double vm_add_cu) const {
    std::vector<PmCandidate> out = build_candidates(true, exclude_pm, UtilBasis::reservation);
    if (cfg_.policy == "ecocloud") {
        std::erase_if(out, [this, vm_add_cu](const PmCandidate& c) {
            return c.cpu_cap_cu > 0.0 &&
                   (c.cpu_used_cu + vm_add_cu) / c.cpu_cap_cu > cfg_.params.T_a;
        });
    }
    return out;
}

int Simulation::place_initial(int vm_id) {
    const VirtualMachine& vm = fleet_.vms[static_cast<std::size_t>(vm_id)];

    if (cfg_.policy == "drs") {
        // one pool: powered-off hosts compete as empty machines
        std::vector<PmCandidate> pool = build_candidates(true, -1, UtilBasis::load);
        std::vector<PmCandidate> off = build_candidates(false, -1, UtilBasis::load);
        pool.insert(pool.end(), off.begin(), off.end());
        return drs_place(vm.demand, pool, cfg_.params, &rng_);
    }

    ScoreFn score = cfg_.policy == "ecocloud" ? ecocloud_score : nfv_score;
    // energy-aware policies open a new host only when no running host fits
    try {
        return probabilistic_place(vm.demand, vm.demand.cpu_cu(),
                                   policy_candidates(-1, vm.demand.cpu_cu()), score,
                                   cfg_.params, &rng_);
    } catch (const PlacementFailed&) {
        return open_new_host(vm.demand, -1);
    }
}

void Simulation::initial_allocation() {
    if (allocated_) throw InvariantViolation("initial_allocation called twice");
    allocated_ = true;
    if (trace_mode_) refresh_trace_loads();
    else refresh_mi_loads();

    for (const auto& vm : fleet_.vms) {
        int target;
        try {
            target = place_initial(vm.id);
        } catch (const PlacementFailed&) {
            throw PlacementFailed(vm.id, "no feasible host for vm " + std::to_string(vm.id) +
                                             " (type " + std::to_string(vm.vm_type) + ")");
        }
        PhysicalMachine& pm = fleet_.pms[static_cast<std::size_t>(target)];
        if (!pm.powered_on) {
            pm.powered_on = true;
            ever_on_[static_cast<std::size_t>(target)] = 1;
        }
        place_vm(fleet_, vm.id, target);
    }
    audit();
}

void Simulation::apply_migration(int vm_id, int source_pm, int target_pm) {
    if (source_pm == target_pm)
        throw InvariantViolation("migration with source == target");
    PhysicalMachine& target = fleet_.pms[static_cast<std::size_t>(target_pm)];
    if (!target.powered_on) {
        target.powered_on = true;
        ever_on_[static_cast<std::size_t>(target_pm)] = 1;
    }
    remove_vm(fleet_, vm_id);
    if (!validate_placement(fleet_, vm_id, target_pm))
        throw InvariantViolation("planned migration target rejects vm " + std::to_string(vm_id));
    place_vm(fleet_, vm_id, target_pm);
    fleet_.vms[static_cast<std::size_t>(vm_id)].migration_count += 1;
    cooldown_until_[static_cast<std::size_t>(vm_id)] = tick_ + 1 + cfg_.cooldown_ticks;
    ++migrations_;
}

void Simulation::run_drs_trigger() {
    std::vector<double> utils;
    std::vector<int> on_ids;
    for (const auto& pm : fleet_.pms) {
        if (!pm.powered_on) continue;
        on_ids.push_back(pm.id);
        utils.push_back(effective_cpu_util(fleet_, pm));
    }
    if (on_ids.empty()) return;
    if (drs_imbalance(utils) <= cfg_.params.drs_threshold) return;

    DrsState st;
    st.pms.reserve(on_ids.size());
    std::vector<int> pm_index(fleet_.pms.size(), -1);
    for (int id : on_ids) {
        const PhysicalMachine& pm = fleet_.pms[static_cast<std::size_t>(id)];
        pm_index[static_cast<std::size_t>(id)] = static_cast<int>(st.pms.size());
        st.pms.push_back({id, pm.capacity.cpu_cu(), effective_cpu_used_cu(fleet_, pm),
                          residual_capacity(fleet_, pm)});
    }
    for (const auto& vm : fleet_.vms) {
        if (!vm.host) continue;
        DrsState::Vm row;
        row.id = vm.id;
        row.pm_index = pm_index[static_cast<std::size_t>(*vm.host)];
        row.cpu_used_cu = vm.demand.cpu_cu() * vm.load.cpu;
        row.demand = vm.demand;
        row.movable = vm_movable(vm.id);
        st.vms.push_back(row);
    }

    for (const MigrationDecision& d : drs_migrate(std::move(st), cfg_.params, tick_, &rng_))
        apply_migration(d.vm, d.source_pm, d.target_pm);
}

void Simulation::run_threshold_triggers() {
    ScoreFn score = cfg_.policy == "ecocloud" ? ecocloud_score : nfv_score;
    // Handle hosts carrying the least total demand first: they are the
    // cheapest to drain, and draining them while absorber slack exists is
    // what lets consolidation retire hosts. Ties keep id order.
    std::vector<std::pair<std::int64_t, int>> order;
    for (const auto& pm : fleet_.pms)
        if (pm.powered_on) order.emplace_back(hosted_demand(fleet_, pm).cpu_milli, pm.id);
    std::sort(order.begin(), order.end());
    for (const auto& [initial_demand, pm_id] : order) {
        PhysicalMachine& pm = fleet_.pms[static_cast<std::size_t>(pm_id)];
        if (!pm.powered_on) continue;
        if (std::find(pending_off_.begin(), pending_off_.end(), pm.id) != pending_off_.end())
            continue;
        double util = effective_cpu_util(fleet_, pm);
        if (!threshold_trigger(util, pm.hosted_vms.size(), cfg_.params)) continue;

        if (util > cfg_.params.T_a) {
            // relief: move the largest movable VM somewhere better
            int vm_id = -1;
            std::int64_t best_demand = -1;
            for (int candidate : pm.hosted_vms) {
                if (!vm_movable(candidate)) continue;
                std::int64_t demand = fleet_.vms[static_cast<std::size_t>(candidate)].demand.cpu_milli;
                if (demand > best_demand || (demand == best_demand && candidate < vm_id)) {
                    best_demand = demand;
                    vm_id = candidate;
                }
            }
            if (vm_id < 0) continue;
            const VirtualMachine& vm = fleet_.vms[static_cast<std::size_t>(vm_id)];
            int target;
            try {
                target = probabilistic_place(vm.demand, vm.demand.cpu_cu(),
                                             policy_candidates(pm.id, vm.demand.cpu_cu()),
                                             score, cfg_.params, &rng_);
            } catch (const PlacementFailed&) {
                try {
                    target = open_new_host(vm.demand, pm.id);
                } catch (const PlacementFailed&) {
                    continue; // nowhere to go; retry next tick
                }
            }
            apply_migration(vm_id, pm.id, target);
        } else {
            // consolidation: evacuate the whole host or leave it alone
            bool all_movable = true;
            for (int vm_id : pm.hosted_vms)
                if (!vm_movable(vm_id)) { all_movable = false; break; }
            if (!all_movable) continue;

            std::vector<int> evacuees = select_vms(fleet_, pm.id, SelectMode::under_threshold);
            std::vector<PmCandidate> hypothetical =
                build_candidates(true, pm.id, UtilBasis::reservation);
            std::vector<std::pair<int, int>> plan; // vm -> target
            bool complete = true;
            for (int vm_id : evacuees) {
                const VirtualMachine& vm = fleet_.vms[static_cast<std::size_t>(vm_id)];
                std::vector<PmCandidate> pool = hypothetical;
                if (cfg_.policy == "ecocloud") {
                    double add = vm.demand.cpu_cu();
                    std::erase_if(pool, [this, add](const PmCandidate& c) {
                        return c.cpu_cap_cu > 0.0 &&
                               (c.cpu_used_cu + add) / c.cpu_cap_cu > cfg_.params.T_a;
                    });
                }
                int target;
                try {
                    target = probabilistic_place(vm.demand, vm.demand.cpu_cu(), pool,
                                                 score, cfg_.params, &rng_);
                } catch (const PlacementFailed&) {
                    complete = false;
                    break;
                }
                plan.emplace_back(vm_id, target);
                for (auto& row : hypothetical) {
                    if (row.pm_id != target) continue;
                    row.cpu_used_cu += vm.demand.cpu_cu();
                    row.residual -= vm.demand;
                }
            }
            if (!complete) continue;
            for (const auto& [vm_id, target] : plan) apply_migration(vm_id, pm.id, target);
            pending_off_.push_back(pm.id);
        }
    }
}

void Simulation::run_policy_triggers() {
    pending_off_.clear();
    if (cfg_.policy == "drs") run_drs_trigger();
    else run_threshold_triggers();
}

void Simulation::integrate_energy() {
    for (auto& pm : fleet_.pms) {
        if (!pm.powered_on) continue;
        std::vector<VmShare> shares;
        shares.reserve(pm.hosted_vms.size());
        for (int vm_id : pm.hosted_vms) {
            const VirtualMachine& vm = fleet_.vms[static_cast<std::size_t>(vm_id)];
            double share =
                delta_u(vm.demand.cpu_cu(), pm.capacity.cpu_cu(), &clamp_warnings_) * vm.load.cpu;
            shares.push_back({vm_id, share});
        }
        UtilizationSample sample;
        if (cfg_.power.mode == PowerMode::multi_dimensional) {
            LoadFractions f = effective_utilization(fleet_, pm);
            sample.u_cpu = std::min(100.0, 100.0 * f.cpu);
            sample.u_mem = f.mem * cfg_.power.mem_max_rate;
            sample.u_disk = f.disk * cfg_.power.disk_max_rate;
            sample.u_net = f.net * cfg_.power.net_max_rate;
            sample.timestamp = static_cast<double>(tick_) * tick_s_;
        }
        integrate_tick(fleet_, pm.id, shares, sample, tick_s_, cfg_.power);
    }
}

void Simulation::apply_power_offs() {
    for (int id : pending_off_) {
        PhysicalMachine& pm = fleet_.pms[static_cast<std::size_t>(id)];
        if (!pm.hosted_vms.empty())
            throw InvariantViolation("pm " + std::to_string(id) +
                                     " scheduled for power-off still hosts VMs");
        pm.powered_on = false;
    }
    pending_off_.clear();
}

void Simulation::append_metrics() {
    double total_joules = 0.0;
    for (const auto& pm : fleet_.pms) total_joules += pm.energy_joules;
    double util_sum = 0.0;
    std::vector<double> utils;
    for (const auto& pm : fleet_.pms) {
        if (!pm.powered_on) continue;
        double u = effective_cpu_util(fleet_, pm);
        utils.push_back(u);
        util_sum += u;
    }
    TimePoint point;
    point.tick = tick_;
    point.seconds = static_cast<double>(tick_) * tick_s_;
    point.cumulative_kwh = joules_to_kwh(total_joules);
    point.mean_cpu_util = utils.empty() ? 0.0 : util_sum / static_cast<double>(utils.size());
    point.imbalance_g = utils.empty() ? 0.0 : drs_imbalance(utils);
    point.migrations_so_far = migrations_;
    series_.push_back(point);
}

void Simulation::audit() const {
    std::size_t placed = 0;
    std::vector<int> seen(fleet_.vms.size(), 0);
    for (const auto& pm : fleet_.pms) {
        if (!pm.powered_on && !pm.hosted_vms.empty())
            throw InvariantViolation("powered-off pm " + std::to_string(pm.id) + " hosts VMs");
        if (!hosted_demand(fleet_, pm).fits_within(pm.capacity))
            throw InvariantViolation("pm " + std::to_string(pm.id) + " over capacity");
        for (int vm_id : pm.hosted_vms) {
            ++placed;
            if (++seen[static_cast<std::size_t>(vm_id)] > 1)
                throw InvariantViolation("vm " + std::to_string(vm_id) + " hosted twice");
            const auto& vm = fleet_.vms[static_cast<std::size_t>(vm_id)];
            if (!vm.host || *vm.host != pm.id)
                throw InvariantViolation("vm " + std::to_string(vm_id) + " host field mismatch");
        }
    }
    std::size_t with_host = 0;
    for (const auto& vm : fleet_.vms)
        if (vm.host) ++with_host;
    if (with_host != placed) throw InvariantViolation("VM conservation violated");

    double elapsed = static_cast<double>(tick_) * tick_s_;
    for (const auto& pm : fleet_.pms) {
        if (pm.energy_joules < prev_pm_energy_[static_cast<std::size_t>(pm.id)] - 1e-9)
            throw InvariantViolation("pm energy decreased");
        if (pm.power_on_time > elapsed + 1e-9)
            throw InvariantViolation("pm on-time exceeds simulated time");
        if (cfg_.power.mode == PowerMode::cpu_share) {
            double idle_floor = pm.p_min * pm.power_on_time;
            double tol = 1e-9 * std::max(1.0, pm.energy_joules);
            if (pm.energy_joules < idle_floor - tol)
                throw InvariantViolation("pm energy below idle floor");
            if (std::abs(pm.energy_joules - idle_floor - pm.attributed_joules) > tol)
                throw InvariantViolation("per-VM energy attribution does not close");
        }
    }
}

void Simulation::step() {
    if (!allocated_) initial_allocation();
    if (tick_ >= total_ticks_) throw InvariantViolation("step past configured duration");

    if (!trace_mode_) refresh_mi_loads(); // busy-ness sampled at tick start
    advance_nfvlets();
    if (trace_mode_) refresh_trace_loads();
    run_policy_triggers();
    integrate_energy();
    apply_power_offs();
    ++tick_;
    append_metrics();
    audit();
    for (const auto& pm : fleet_.pms)
        prev_pm_energy_[static_cast<std::size_t>(pm.id)] = pm.energy_joules;
}

SimReport Simulation::make_report() const {
    SimReport report;
    report.ticks = tick_;
    report.sim_seconds = static_cast<double>(tick_) * tick_s_;
    report.migration_count = migrations_;
    report.delta_u_clamp_warnings = clamp_warnings_;
    double total_joules = 0.0;
    for (const auto& pm : fleet_.pms) {
        total_joules += pm.energy_joules;
        report.per_pm.push_back(
            {pm.id, pm.pm_type, joules_to_kwh(pm.energy_joules), pm.power_on_time});
    }
    report.total_energy_kwh = joules_to_kwh(total_joules);
    long vm_migrations = 0;
    for (const auto& vm : fleet_.vms) {
        vm_migrations += vm.migration_count;
        report.per_vm.push_back(
            {vm.id, vm.vm_type, joules_to_kwh(vm.energy_joules), vm.migration_count});
    }
    if (vm_migrations != migrations_)
        throw InvariantViolation("per-VM migration counters disagree with the applied total");
    for (char on : ever_on_)
        if (on) ++report.pms_ever_on;
    report.time_series = series_;
    report.config_echo = effective_config(cfg_);
    return report;
}

SimReport Simulation::run() {
    if (!allocated_) initial_allocation();
    while (tick_ < total_ticks_) step();
    return make_report();
}

SimReport run(const SimConfig& cfg) {
    Simulation sim(cfg);
    return sim.run();
}

std::vector<ComparisonCell> compare(const std::vector<CompareCase>& cases,
                                    const std::vector<std::string>& policies) {
    std::vector<ComparisonCell> cells;
    for (const CompareCase& c : cases) {
        for (const std::string& policy : policies) {
            ComparisonCell cell;
            cell.case_name = c.name;
            cell.policy = policy;
            SimConfig cfg = c.config;
            cfg.policy = policy;
            try {
                SimReport report = run(cfg);
                cell.energy_kwh = report.total_energy_kwh;
                cell.migrations = report.migration_count;
            } catch (const SimError& e) {
                cell.failed = true;
                cell.error = e.what();
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

namespace {

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

} // namespace

std::string render_summary(const SimReport& report) {
    std::string out;
    out += "nfvsim run summary\n";
    out += "==================\n\n";
    out += "[config]\n";
    for (const auto& [key, value] : report.config_echo) out += key + " = " + value + "\n";
    out += "\n[results]\n";
    out += "total_energy_kwh = " + format("%.4f", report.total_energy_kwh) + "\n";
    out += "migrations = " + std::to_string(report.migration_count) + "\n";
    out += "ticks = " + std::to_string(report.ticks) + "\n";
    out += "sim_seconds = " + format("%.3f", report.sim_seconds) + "\n";
    out += "pms_ever_on = " + std::to_string(report.pms_ever_on) + "\n";
    out += "delta_u_clamp_warnings = " + std::to_string(report.delta_u_clamp_warnings) + "\n";
    out += "\n[per_pm]\n";
    out += "# id type energy_kwh on_time_s\n";
    for (const auto& pm : report.per_pm)
        out += std::to_string(pm.id) + " " + std::to_string(pm.type + 1) + " " +
               format("%.4f", pm.energy_kwh) + " " + format("%.3f", pm.on_time_s) + "\n";
    out += "\n[per_vm]\n";
    out += "# id type energy_kwh migrations\n";
    for (const auto& vm : report.per_vm)
        out += std::to_string(vm.id) + " " + std::to_string(vm.type + 1) + " " +
               format("%.4f", vm.energy_kwh) + " " + std::to_string(vm.migrations) + "\n";
    return out;
}

std::string render_timeseries(const SimReport& report) {
    std::string out = "tick,seconds,cumulative_kwh,mean_cpu_util,imbalance_g,migrations_so_far\n";
    for (const TimePoint& p : report.time_series) {
        out += std::to_string(p.tick) + "," + format("%.3f", p.seconds) + "," +
               format("%.6f", p.cumulative_kwh) + "," + format("%.6f", p.mean_cpu_util) + "," +
               format("%.6f", p.imbalance_g) + "," + std::to_string(p.migrations_so_far) + "\n";
    }
    return out;
}

std::string render_comparison(const std::vector<ComparisonCell>& cells) {
    std::string out = "case,policy,energy_kwh,migrations,error\n";
    for (const ComparisonCell& cell : cells) {
        out += cell.case_name + "," + cell.policy + ",";
        if (cell.failed) {
            std::string msg = cell.error;
            for (char& ch : msg)
                if (ch == ',' || ch == '\n') ch = ' ';
            out += "NA,NA," + msg + "\n";
        } else {
            out += format("%.4f", cell.energy_kwh) + "," + std::to_string(cell.migrations) + ",\n";
        }
    }
    return out;
}

} // namespace nfvsim

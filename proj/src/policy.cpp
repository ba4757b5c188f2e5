#include "nfvsim/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nfvsim/errors.hpp"

namespace nfvsim {

void PolicyParams::validate() const {
    if (!(T_b >= 0.0 && T_b < T_a && T_a <= 1.0))
        throw SpecError("thresholds must satisfy 0 <= T_b < T_a <= 1");
    if (p != 2 && p != 3 && p != 4) throw SpecError("EcoCloud exponent p must be 2, 3 or 4");
    if (alpha <= 0.0 || beta <= 0.0) throw SpecError("Beta shape parameters must be > 0");
    if (drs_threshold <= 0.0) throw SpecError("drs_threshold must be > 0");
}

namespace {

bool feasible(const PmCandidate& c, const ResourceVector& demand) {
    return demand.fits_within(c.residual);
}

int break_tie(const std::vector<int>& best_ids, TieBreak mode, Rng* rng) {
    if (best_ids.size() == 1 || mode == TieBreak::lowest_id || rng == nullptr)
        return *std::min_element(best_ids.begin(), best_ids.end());
    return best_ids[static_cast<std::size_t>(rng->bounded(best_ids.size()))];
}

} // namespace

int drs_place(const ResourceVector& vm_demand, std::span<const PmCandidate> pms,
              const PolicyParams& params, Rng* rng) {
    double best_util = 0.0;
    std::vector<int> best_ids;
    for (const PmCandidate& c : pms) {
        if (!feasible(c, vm_demand)) continue;
        double util = candidate_util(c);
        if (best_ids.empty() || util < best_util) {
            best_util = util;
            best_ids = {c.pm_id};
        } else if (util == best_util) {
            best_ids.push_back(c.pm_id);
        }
    }
    if (best_ids.empty()) throw PlacementFailed(-1, "no feasible host");
    return break_tie(best_ids, params.tie_break, rng);
}

double drs_imbalance(std::span<const double> utils) {
    if (utils.empty()) throw NoHosts();
    double mean = 0.0;
    for (double u : utils) mean += u;
    mean /= static_cast<double>(utils.size());
    double var = 0.0;
    for (double u : utils) var += (u - mean) * (u - mean);
    var /= static_cast<double>(utils.size());
    return std::sqrt(var);
}

namespace {

double state_imbalance(const DrsState& st) {
    std::vector<double> utils;
    utils.reserve(st.pms.size());
    for (const auto& pm : st.pms)
        utils.push_back(pm.cpu_cap_cu > 0.0 ? pm.cpu_used_cu / pm.cpu_cap_cu : 0.0);
    return drs_imbalance(utils);
}

} // namespace

std::vector<MigrationDecision> drs_migrate(DrsState state, const PolicyParams& params,
                                           long tick, Rng* rng) {
    std::vector<MigrationDecision> decisions;
    if (state.pms.empty() || state.vms.empty()) return decisions;
    const std::size_t max_moves = state.vms.size();

    double g = state_imbalance(state);
    while (g > params.drs_threshold && decisions.size() < max_moves) {
        // most-loaded host, lowest id on ties
        int src = -1;
        double src_util = -1.0;
        for (std::size_t i = 0; i < state.pms.size(); ++i) {
            double util = state.pms[i].cpu_cap_cu > 0.0
                              ? state.pms[i].cpu_used_cu / state.pms[i].cpu_cap_cu
                              : 0.0;
            if (util > src_util) {
                src_util = util;
                src = static_cast<int>(i);
            }
        }

        // largest movable VM on it
        int vm_idx = -1;
        for (std::size_t i = 0; i < state.vms.size(); ++i) {
            const auto& vm = state.vms[i];
            if (vm.pm_index != src || !vm.movable) continue;
            if (vm_idx < 0 ||
                vm.demand.cpu_milli > state.vms[vm_idx].demand.cpu_milli ||
                (vm.demand.cpu_milli == state.vms[vm_idx].demand.cpu_milli &&
                 vm.id < state.vms[vm_idx].id))
                vm_idx = static_cast<int>(i);
        }
        if (vm_idx < 0) break;
        DrsState::Vm& vm = state.vms[vm_idx];

        // lowest-loaded feasible target among the remaining hosts
        std::vector<PmCandidate> candidates;
        for (std::size_t i = 0; i < state.pms.size(); ++i) {
            if (static_cast<int>(i) == src) continue;
            const auto& pm = state.pms[i];
            candidates.push_back({pm.id, pm.cpu_cap_cu, pm.cpu_used_cu, pm.residual});
        }
        int target_id;
        try {
            target_id = drs_place(vm.demand, candidates, params, rng);
        } catch (const PlacementFailed&) {
            break;
        }
        int target = -1;
        for (std::size_t i = 0; i < state.pms.size(); ++i)
            if (state.pms[i].id == target_id) target = static_cast<int>(i);

        // accept only if the move strictly lowers g
        DrsState moved = state;
        moved.pms[src].cpu_used_cu -= vm.cpu_used_cu;
        moved.pms[src].residual += vm.demand;
        moved.pms[target].cpu_used_cu += vm.cpu_used_cu;
        moved.pms[target].residual -= vm.demand;
        double g_new = state_imbalance(moved);
        if (!(g_new < g)) break;

        decisions.push_back({vm.id, state.pms[src].id, target_id, tick});
        state = std::move(moved);
        state.vms[vm_idx].pm_index = target;
        state.vms[vm_idx].movable = false; // one relocation per VM per planning pass
        g = g_new;
    }
    return decisions;
}

double ecocloud_score(double u, const PolicyParams& params) {
    params.validate();
    if (u <= 0.0 || u > params.T_a) return 0.0;
    double p = static_cast<double>(params.p);
    double m_p = std::pow(p, p) / std::pow(p + 1.0, p + 1.0) * std::pow(params.T_a, p + 1.0);
    return std::pow(u, p) * (params.T_a - u) / m_p;
}

double nfv_score(double x, const PolicyParams& params) {
    params.validate();
    if (x < 0.0 || x > 1.0) return 0.0;
    double density;
    if ((x == 0.0 && params.alpha < 1.0) || (x == 1.0 && params.beta < 1.0)) {
        return 0.0; // density diverges; clamped score hits the floor
    }
    double b = std::beta(params.alpha, params.beta);
    density = std::pow(x, params.alpha - 1.0) * std::pow(1.0 - x, params.beta - 1.0) / b;
    double f = 1.0 - density / 3.0;
    return std::clamp(f, 0.0, 1.0);
}

int probabilistic_place(const ResourceVector& vm_demand, double vm_add_cu,
                        std::span<const PmCandidate> pms, ScoreFn score,
                        const PolicyParams& params, Rng* rng) {
    struct Scored {
        int pm_id;
        double score;
    };
    std::vector<Scored> scored;
    for (const PmCandidate& c : pms) {
        if (!feasible(c, vm_demand)) continue;
        double post_util = c.cpu_cap_cu > 0.0 ? (c.cpu_used_cu + vm_add_cu) / c.cpu_cap_cu : 0.0;
        scored.push_back({c.pm_id, score(post_util, params)});
    }
    if (scored.empty()) throw PlacementFailed(-1, "no feasible host");

    if (params.stochastic && rng != nullptr) {
        // EcoCloud-style Bernoulli assent: each host accepts with probability
        // equal to its score; pick uniformly among accepters.
        std::vector<int> accepted;
        for (const Scored& s : scored)
            if (rng->next_double() < s.score) accepted.push_back(s.pm_id);
        if (!accepted.empty())
            return accepted[static_cast<std::size_t>(rng->bounded(accepted.size()))];
        // nobody accepted: fall through to argmax
    }

    double best = -1.0;
    std::vector<int> best_ids;
    for (const Scored& s : scored) {
        if (s.score > best) {
            best = s.score;
            best_ids = {s.pm_id};
        } else if (s.score == best) {
            best_ids.push_back(s.pm_id);
        }
    }
    return break_tie(best_ids, params.tie_break, rng);
}

bool threshold_trigger(double pm_util, std::size_t hosted_vm_count, const PolicyParams& params) {
    if (pm_util > params.T_a) return true;
    return hosted_vm_count >= 1 && pm_util < params.T_b;
}

std::vector<int> select_vms(const Fleet& fleet, int pm_id, SelectMode mode) {
    const PhysicalMachine& pm = fleet.pms.at(pm_id);
    if (pm.hosted_vms.empty()) throw NoVm("pm " + std::to_string(pm_id) + " hosts no VMs");

    std::vector<int> ids = pm.hosted_vms;
    std::sort(ids.begin(), ids.end(), [&fleet](int a, int b) {
        const auto& da = fleet.vms.at(a).demand;
        const auto& db = fleet.vms.at(b).demand;
        if (da.cpu_milli != db.cpu_milli) return da.cpu_milli < db.cpu_milli;
        return a < b;
    });
    if (mode == SelectMode::over_threshold) {
        // largest demand; ties already resolve to the lowest id because the
        // ascending sort is (demand, id) and we scan from the back
        int best = ids.back();
        for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
            if (fleet.vms.at(*it).demand.cpu_milli != fleet.vms.at(best).demand.cpu_milli) break;
            best = *it;
        }
        return {best};
    }
    return ids;
}

} // namespace nfvsim

#include "nfvsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "nfvsim/errors.hpp"

namespace nfvsim {

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

ConfigFile parse_config(std::istream& in, const std::string& filename) {
    ConfigFile file;
    file.filename = filename;
    std::string section, line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = strip(line);
        if (body.empty() || body[0] == '#' || body[0] == ';') continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw ConfigError(filename, line_no, "malformed section header: " + body);
            section = strip(body.substr(1, body.size() - 2));
            if (section.empty()) throw ConfigError(filename, line_no, "empty section name");
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(filename, line_no, "expected key = value, got: " + body);
        std::string key = strip(body.substr(0, eq));
        std::string value = strip(body.substr(eq + 1));
        if (key.empty()) throw ConfigError(filename, line_no, "empty key");
        if (section.empty()) throw ConfigError(filename, line_no, "key outside any [section]");
        std::string full = section + "." + key;
        if (file.values.count(full))
            throw ConfigError(filename, line_no, "duplicate key: " + full);
        file.values[full] = {value, line_no};
    }
    return file;
}

ConfigFile load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in, path);
}

namespace {

class Reader {
public:
    explicit Reader(const ConfigFile& file) : file_(file) {}

    bool has(const std::string& key) const { return file_.values.count(key) > 0; }

    std::string str(const std::string& key, const std::string& fallback) {
        used_.insert(key);
        auto it = file_.values.find(key);
        return it == file_.values.end() ? fallback : it->second.value;
    }

    double num(const std::string& key, double fallback) {
        used_.insert(key);
        auto it = file_.values.find(key);
        if (it == file_.values.end()) return fallback;
        try {
            std::size_t pos = 0;
            double v = std::stod(it->second.value, &pos);
            if (pos != it->second.value.size()) throw std::invalid_argument(it->second.value);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(file_.filename, it->second.line,
                              "bad numeric value for " + key + ": " + it->second.value);
        }
    }

    long long integer(const std::string& key, long long fallback) {
        double v = num(key, static_cast<double>(fallback));
        double r = std::round(v);
        if (std::abs(v - r) > 1e-9) {
            auto it = file_.values.find(key);
            throw ConfigError(file_.filename, it->second.line, key + " must be an integer");
        }
        return static_cast<long long>(r);
    }

    bool boolean(const std::string& key, bool fallback) {
        used_.insert(key);
        auto it = file_.values.find(key);
        if (it == file_.values.end()) return fallback;
        const std::string& v = it->second.value;
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ConfigError(file_.filename, it->second.line, key + " must be a boolean");
    }

    int line_of(const std::string& key) const {
        auto it = file_.values.find(key);
        return it == file_.values.end() ? 0 : it->second.line;
    }

    // every key the schema never asked about is a typo
    void reject_unknown(const std::set<std::string>& dynamic_ok) const {
        for (const auto& [key, entry] : file_.values) {
            if (used_.count(key) || dynamic_ok.count(key)) continue;
            throw ConfigError(file_.filename, entry.line, "unknown config key: " + key);
        }
    }

private:
    const ConfigFile& file_;
    std::set<std::string> used_;
};

std::string normalize_type_key(std::string name) {
    for (char& ch : name)
        if (ch == '-' || ch == ' ') ch = '_';
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return name;
}

} // namespace

SimConfig make_sim_config(const ConfigFile& file, std::optional<std::uint64_t> seed_override,
                          std::optional<std::uint64_t> env_seed) {
    Reader r(file);
    SimConfig cfg;

    // catalog first: fleet keys are named after its types
    std::string catalog_path = r.str("fleet.catalog", "");
    if (!catalog_path.empty()) cfg.catalog = load_catalog_file(catalog_path);

    std::string mode = r.str("workload.mode", "diurnal");
    if (mode == "diurnal") cfg.workload_mode = WorkloadMode::diurnal;
    else if (mode == "traces") cfg.workload_mode = WorkloadMode::traces;
    else if (mode == "generator") cfg.workload_mode = WorkloadMode::generator;
    else
        throw ConfigError(file.filename, r.line_of("workload.mode"),
                          "workload.mode must be diurnal, traces or generator");

    // MI scenarios need sub-second resolution; trace intervals do not
    double default_tick = cfg.workload_mode == WorkloadMode::generator ? 0.1 : 300.0;
    cfg.duration_ms = static_cast<std::int64_t>(std::llround(r.num("sim.duration", 86400.0) * 1000.0));
    cfg.tick_ms = static_cast<std::int64_t>(std::llround(r.num("sim.tick", default_tick) * 1000.0));
    if (seed_override) cfg.seed = *seed_override;
    else if (r.has("sim.seed")) cfg.seed = static_cast<std::uint64_t>(r.integer("sim.seed", 0));
    else if (env_seed) cfg.seed = *env_seed;
    else cfg.seed = 0;
    r.str("sim.seed", ""); // mark as consumed even when overridden
    cfg.cu_to_mips = r.num("sim.cu_mips", 1000.0);
    cfg.cooldown_ticks = static_cast<int>(r.integer("sim.cooldown_ticks", 3));
    cfg.start_powered_on = r.boolean("sim.start_powered_on", false);

    std::set<std::string> dynamic_ok;
    for (std::size_t t = 0; t < cfg.catalog.pm_types.size(); ++t) {
        std::string key = "fleet.pm_" + normalize_type_key(cfg.catalog.pm_types[t].name);
        dynamic_ok.insert(key);
        long long count = r.integer(key, 0);
        if (count > 0) cfg.pm_counts[static_cast<int>(t)] = static_cast<int>(count);
    }
    for (std::size_t t = 0; t < cfg.catalog.vm_types.size(); ++t) {
        std::string key = "fleet.vm_" + normalize_type_key(cfg.catalog.vm_types[t].name);
        dynamic_ok.insert(key);
        long long count = r.integer(key, 0);
        if (count > 0) cfg.vm_counts[static_cast<int>(t)] = static_cast<int>(count);
    }
    cfg.vm_random_count = static_cast<int>(r.integer("fleet.vm_random", 0));

    cfg.trace_prefix = r.str("workload.prefix", "");
    std::string dist = r.str("workload.distribution", "uniform");
    if (dist == "uniform") cfg.generator.dist = LengthDistribution::uniform;
    else if (dist == "normal") cfg.generator.dist = LengthDistribution::normal;
    else if (dist == "poisson") cfg.generator.dist = LengthDistribution::poisson;
    else
        throw ConfigError(file.filename, r.line_of("workload.distribution"),
                          "workload.distribution must be uniform, normal or poisson");
    cfg.generator.uniform_lo = r.num("workload.uniform_lo", 1e3);
    cfg.generator.uniform_hi = r.num("workload.uniform_hi", 1e4);
    cfg.generator.normal_mean = r.num("workload.normal_mean", 5e3);
    cfg.generator.normal_sigma = r.num("workload.normal_sigma", 1e3);
    cfg.generator.poisson_mean = r.num("workload.poisson_mean", 5e3);
    cfg.generator.task_count = static_cast<int>(r.integer("workload.count", 0));
    std::string app = r.str("workload.app_type", "cpu");
    if (app == "cpu") cfg.generator.app_type = AppType::cpu_intensive;
    else if (app == "io") cfg.generator.app_type = AppType::io_intensive;
    else if (app == "hybrid") cfg.generator.app_type = AppType::hybrid;
    else
        throw ConfigError(file.filename, r.line_of("workload.app_type"),
                          "workload.app_type must be cpu, io or hybrid");
    cfg.generator.seed = cfg.seed;

    cfg.policy = r.str("policy.name", "nfv");
    cfg.params.T_a = r.num("policy.T_a", 0.9);
    cfg.params.T_b = r.num("policy.T_b", 0.2);
    cfg.params.p = static_cast<int>(r.integer("policy.p", 2));
    cfg.params.alpha = r.num("policy.alpha", 2.0);
    cfg.params.beta = r.num("policy.beta", 2.0);
    cfg.params.drs_threshold = r.num("policy.drs_threshold", 0.1);
    std::string tie = r.str("policy.tie_break", "lowest_id");
    if (tie == "lowest_id") cfg.params.tie_break = TieBreak::lowest_id;
    else if (tie == "random_seeded") cfg.params.tie_break = TieBreak::random_seeded;
    else
        throw ConfigError(file.filename, r.line_of("policy.tie_break"),
                          "policy.tie_break must be lowest_id or random_seeded");
    cfg.params.stochastic = r.boolean("policy.stochastic", false);

    std::string power_mode = r.str("power.mode", "cpu_share");
    if (power_mode == "cpu_share") cfg.power.mode = PowerMode::cpu_share;
    else if (power_mode == "multi_dimensional") cfg.power.mode = PowerMode::multi_dimensional;
    else
        throw ConfigError(file.filename, r.line_of("power.mode"),
                          "power.mode must be cpu_share or multi_dimensional");
    if (r.has("power.p_min")) cfg.p_min_override = r.num("power.p_min", 175.0);
    else r.num("power.p_min", 175.0);
    if (r.has("power.p_max")) cfg.p_max_override = r.num("power.p_max", 250.0);
    else r.num("power.p_max", 250.0);
    for (std::size_t t = 0; t < cfg.catalog.pm_types.size(); ++t) {
        std::string suffix = normalize_type_key(cfg.catalog.pm_types[t].name);
        std::string kmin = "power.p_min_" + suffix;
        std::string kmax = "power.p_max_" + suffix;
        dynamic_ok.insert(kmin);
        dynamic_ok.insert(kmax);
        if (r.has(kmin)) cfg.p_min_per_type[static_cast<int>(t)] = r.num(kmin, 0.0);
        if (r.has(kmax)) cfg.p_max_per_type[static_cast<int>(t)] = r.num(kmax, 0.0);
    }
    cfg.power.c0 = r.num("power.c0", 14.5);
    cfg.power.c_cpu = r.num("power.c_cpu", 0.2);
    cfg.power.c_mem = r.num("power.c_mem", 4.5e-8);
    cfg.power.c_disk = r.num("power.c_disk", 0.003);
    cfg.power.c_net = r.num("power.c_net", 3.1e-8);
    cfg.power.mem_max_rate = r.num("power.mem_max_rate", 1e9);
    cfg.power.disk_max_rate = r.num("power.disk_max_rate", 1e5);
    cfg.power.net_max_rate = r.num("power.net_max_rate", 1e5);

    r.reject_unknown(dynamic_ok);
    cfg.validate();
    return cfg;
}

std::vector<std::pair<std::string, std::string>> effective_config(const SimConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&out](const std::string& k, const std::string& v) { out.emplace_back(k, v); };

    add("sim.duration", fmt(static_cast<double>(cfg.duration_ms) / 1000.0));
    add("sim.tick", fmt(static_cast<double>(cfg.tick_ms) / 1000.0));
    add("sim.seed", std::to_string(cfg.seed));
    add("sim.cu_mips", fmt(cfg.cu_to_mips));
    add("sim.cooldown_ticks", std::to_string(cfg.cooldown_ticks));
    add("sim.start_powered_on", cfg.start_powered_on ? "true" : "false");

    for (const auto& [type, count] : cfg.pm_counts)
        add("fleet.pm_" +
                normalize_type_key(cfg.catalog.pm_types[static_cast<std::size_t>(type)].name),
            std::to_string(count));
    for (const auto& [type, count] : cfg.vm_counts)
        add("fleet.vm_" +
                normalize_type_key(cfg.catalog.vm_types[static_cast<std::size_t>(type)].name),
            std::to_string(count));
    add("fleet.vm_random", std::to_string(cfg.vm_random_count));

    switch (cfg.workload_mode) {
    case WorkloadMode::diurnal: add("workload.mode", "diurnal"); break;
    case WorkloadMode::traces:
        add("workload.mode", "traces");
        add("workload.prefix", cfg.trace_prefix);
        break;
    case WorkloadMode::generator: {
        add("workload.mode", "generator");
        const GeneratorSpec& g = cfg.generator;
        switch (g.dist) {
        case LengthDistribution::uniform:
            add("workload.distribution", "uniform");
            add("workload.uniform_lo", fmt(g.uniform_lo));
            add("workload.uniform_hi", fmt(g.uniform_hi));
            break;
        case LengthDistribution::normal:
            add("workload.distribution", "normal");
            add("workload.normal_mean", fmt(g.normal_mean));
            add("workload.normal_sigma", fmt(g.normal_sigma));
            break;
        case LengthDistribution::poisson:
            add("workload.distribution", "poisson");
            add("workload.poisson_mean", fmt(g.poisson_mean));
            break;
        }
        add("workload.count", std::to_string(g.task_count));
        add("workload.app_type", g.app_type == AppType::cpu_intensive ? "cpu"
                                 : g.app_type == AppType::io_intensive ? "io"
                                                                       : "hybrid");
        break;
    }
    }

    add("policy.name", cfg.policy);
    add("policy.T_a", fmt(cfg.params.T_a));
    add("policy.T_b", fmt(cfg.params.T_b));
    add("policy.p", std::to_string(cfg.params.p));
    add("policy.alpha", fmt(cfg.params.alpha));
    add("policy.beta", fmt(cfg.params.beta));
    add("policy.drs_threshold", fmt(cfg.params.drs_threshold));
    add("policy.tie_break",
        cfg.params.tie_break == TieBreak::lowest_id ? "lowest_id" : "random_seeded");
    add("policy.stochastic", cfg.params.stochastic ? "true" : "false");

    add("power.mode",
        cfg.power.mode == PowerMode::cpu_share ? "cpu_share" : "multi_dimensional");
    for (std::size_t t = 0; t < cfg.catalog.pm_types.size(); ++t) {
        if (!cfg.pm_counts.count(static_cast<int>(t))) continue;
        const PmTypeSpec& spec = cfg.catalog.pm_types[t];
        double p_min = cfg.p_min_override.value_or(spec.p_min);
        double p_max = cfg.p_max_override.value_or(spec.p_max);
        if (auto it = cfg.p_min_per_type.find(static_cast<int>(t)); it != cfg.p_min_per_type.end())
            p_min = it->second;
        if (auto it = cfg.p_max_per_type.find(static_cast<int>(t)); it != cfg.p_max_per_type.end())
            p_max = it->second;
        add("power.p_min_" + normalize_type_key(spec.name), fmt(p_min));
        add("power.p_max_" + normalize_type_key(spec.name), fmt(p_max));
    }
    add("power.c0", fmt(cfg.power.c0));
    add("power.c_cpu", fmt(cfg.power.c_cpu));
    add("power.c_mem", fmt(cfg.power.c_mem));
    add("power.c_disk", fmt(cfg.power.c_disk));
    add("power.c_net", fmt(cfg.power.c_net));
    add("power.mem_max_rate", fmt(cfg.power.mem_max_rate));
    add("power.disk_max_rate", fmt(cfg.power.disk_max_rate));
    add("power.net_max_rate", fmt(cfg.power.net_max_rate));
    return out;
}

} // namespace nfvsim

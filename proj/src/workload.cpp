#include "nfvsim/workload.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "nfvsim/errors.hpp"

namespace nfvsim {

namespace {

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r") == std::string::npos;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

LoadTrace parse_trace(std::istream& in, Resource resource) {
    LoadTrace trace;
    trace.resource = resource;
    std::string line;
    int line_no = 0;
    bool in_header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        std::string body = strip(line);
        if (body[0] == '#') {
            // comments are legal only before the first value
            if (!in_header) throw ParseError(line_no, "comment after data");
            auto eq = body.find("interval=");
            if (eq != std::string::npos) {
                std::string num = strip(body.substr(eq + 9));
                try {
                    std::size_t pos = 0;
                    long long v = std::stoll(num, &pos);
                    if (pos != num.size() || v <= 0) throw std::invalid_argument(num);
                    trace.interval_len = v;
                } catch (const std::exception&) {
                    throw ParseError(line_no, "bad interval value: " + num);
                }
            }
            continue;
        }
        in_header = false;
        long long value = 0;
        try {
            std::size_t pos = 0;
            value = std::stoll(body, &pos);
            if (pos != body.size()) throw std::invalid_argument(body);
        } catch (const std::exception&) {
            throw ParseError(line_no, "not a decimal integer: " + body);
        }
        if (value < 0 || value > 100)
            throw RangeError(line_no, "value out of [0,100]: " + std::to_string(value));
        trace.values.push_back(static_cast<int>(value));
    }
    if (trace.values.empty()) throw EmptyTrace();
    return trace;
}

LoadTrace load_trace_file(const std::string& path, Resource resource) {
    std::ifstream in(path);
    if (!in) throw SimError("cannot open workload file: " + path);
    try {
        return parse_trace(in, resource);
    } catch (const EmptyTrace&) {
        throw EmptyTrace(path + ": trace has no values");
    }
}

std::string render_trace(const LoadTrace& trace) {
    std::string out = "# interval=" + std::to_string(trace.interval_len) + "\n";
    for (int v : trace.values) {
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

void write_trace_file(const LoadTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot write workload file: " + path);
    out << render_trace(trace);
}

namespace {
const std::array<const char*, 4> kTraceSuffix = {".cpu", ".mem", ".disk", ".bw"};
}

TraceSet load_trace_set(const std::string& prefix) {
    TraceSet set;
    set.cpu = load_trace_file(prefix + kTraceSuffix[0], Resource::cpu);
    set.mem = load_trace_file(prefix + kTraceSuffix[1], Resource::mem);
    set.disk = load_trace_file(prefix + kTraceSuffix[2], Resource::disk);
    set.net = load_trace_file(prefix + kTraceSuffix[3], Resource::net);
    return set;
}

void write_trace_set(const TraceSet& set, const std::string& prefix) {
    write_trace_file(set.cpu, prefix + kTraceSuffix[0]);
    write_trace_file(set.mem, prefix + kTraceSuffix[1]);
    write_trace_file(set.disk, prefix + kTraceSuffix[2]);
    write_trace_file(set.net, prefix + kTraceSuffix[3]);
}

TraceSet diurnal_profile() {
    // One day's trace: uneven periods expanded to hourly values.
    struct Period {
        int hours;
        int cpu;
        int mem;
    };
    static const std::array<Period, 8> periods = {{
        {2, 30, 30}, // 0-2
        {4, 10, 20}, // 2-6
        {2, 30, 30}, // 6-8
        {4, 70, 40}, // 8-12
        {2, 60, 40}, // 12-14
        {4, 50, 40}, // 14-18
        {5, 90, 50}, // 18-23
        {1, 50, 40}, // 23-0
    }};
    TraceSet set;
    set.cpu.resource = Resource::cpu;
    set.mem.resource = Resource::mem;
    set.disk.resource = Resource::disk;
    set.net.resource = Resource::net;
    for (const Period& p : periods) {
        for (int h = 0; h < p.hours; ++h) {
            set.cpu.values.push_back(p.cpu);
            set.mem.values.push_back(p.mem);
            set.disk.values.push_back(20);
            set.net.values.push_back(20);
        }
    }
    set.cpu.interval_len = set.mem.interval_len = 3600;
    set.disk.interval_len = set.net.interval_len = 3600;
    return set;
}

void GeneratorSpec::validate() const {
    if (task_count < 0) throw SpecError("task_count must be >= 0");
    switch (dist) {
    case LengthDistribution::uniform:
        if (uniform_hi <= 0.0) throw SpecError("uniform upper bound must be > 0");
        if (uniform_lo > uniform_hi) throw SpecError("uniform bounds inverted");
        break;
    case LengthDistribution::normal:
        if (normal_sigma < 0.0) throw SpecError("normal sigma must be >= 0");
        if (normal_sigma == 0.0 && normal_mean <= 0.0)
            throw SpecError("normal distribution has no positive mass");
        break;
    case LengthDistribution::poisson:
        if (poisson_mean <= 0.0) throw SpecError("poisson mean must be > 0");
        break;
    }
}

LoadFractions app_type_weights(AppType type) {
    switch (type) {
    case AppType::cpu_intensive: return {1.0, 0.2, 0.2, 0.2};
    case AppType::io_intensive: return {0.2, 0.2, 1.0, 1.0};
    case AppType::hybrid: return {0.6, 0.6, 0.6, 0.6};
    }
    throw SpecError("unknown app type");
}

std::vector<Nfvlet> generate_nfvlets(const GeneratorSpec& spec, Rng& rng) {
    spec.validate();
    std::vector<Nfvlet> tasks;
    tasks.reserve(static_cast<std::size_t>(spec.task_count));
    LoadFractions weights = app_type_weights(spec.app_type);
    for (int i = 0; i < spec.task_count; ++i) {
        double length = 0.0;
        int redraws = 0;
        do {
            switch (spec.dist) {
            case LengthDistribution::uniform:
                length = rng.uniform(spec.uniform_lo, spec.uniform_hi);
                break;
            case LengthDistribution::normal:
                length = rng.normal(spec.normal_mean, spec.normal_sigma);
                break;
            case LengthDistribution::poisson:
                length = static_cast<double>(rng.poisson(spec.poisson_mean));
                break;
            }
            if (++redraws > 1'000'000)
                throw SpecError("length distribution rejected 1e6 consecutive samples");
        } while (length <= 0.0);

        Nfvlet task;
        task.id = i;
        task.length_mi = length;
        task.remaining_mi = length;
        task.w_cpu = weights.cpu;
        task.w_mem = weights.mem;
        task.w_disk = weights.disk;
        task.w_net = weights.net;
        tasks.push_back(task);
    }
    return tasks;
}

NfvletRuntime nfvlet_runtime(double length_mi, double vm_mips, double pm_mips) {
    if (vm_mips <= 0.0) throw ZeroCapacity("nfvlet_runtime: vm mips is zero");
    NfvletRuntime r;
    r.duration_s = length_mi / vm_mips;
    r.pm_cpu_load = delta_u(vm_mips, pm_mips);
    return r;
}

} // namespace nfvsim

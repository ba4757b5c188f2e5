#include "nfvsim/catalog.hpp"

#include <fstream>
#include <sstream>

#include "nfvsim/errors.hpp"

namespace nfvsim {

const MachineCatalog& default_catalog() {
    static const MachineCatalog catalog = [] {
        MachineCatalog c;
        c.vm_types = {
            {"1-1", make_resources(1.0, 1700, 160)},
            {"1-2", make_resources(4.0, 7500, 850)},
            {"1-3", make_resources(8.0, 15000, 1690)},
            {"2-1", make_resources(6.5, 17100, 420)},
            {"2-2", make_resources(13.0, 34200, 850)},
            {"2-3", make_resources(26.0, 68400, 1690)},
            {"3-1", make_resources(5.0, 1700, 350)},
            {"3-2", make_resources(20.0, 7000, 1690)},
        };
        c.pm_types = {
            {"Type1", make_resources(16.0, 30000, 3380, 1000), 175.0, 250.0},
            {"Type2", make_resources(52.0, 136000, 3380, 1000), 175.0, 250.0},
            {"Type3", make_resources(40.0, 14000, 3380, 1000), 175.0, 250.0},
        };
        return c;
    }();
    return catalog;
}

namespace {

double parse_number(const std::string& token, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "bad numeric value for '" + key + "': " + token);
    }
}

} // namespace

MachineCatalog parse_catalog_file(std::istream& in, const std::string& filename) {
    MachineCatalog catalog;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        auto first = trimmed.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        trimmed = trimmed.substr(first);
        if (trimmed[0] == '#') continue;

        std::istringstream fields(trimmed);
        std::string kind, name;
        fields >> kind >> name;
        if ((kind != "vm" && kind != "pm") || name.empty())
            throw ParseError(line_no, filename + ": expected 'vm <name> ...' or 'pm <name> ...'");

        double cpu = -1.0;
        std::int64_t mem = -1, storage = -1, bw = kind == "pm" ? 1000 : 0;
        double p_min = 175.0, p_max = 250.0;
        std::string kv;
        while (fields >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ParseError(line_no, filename + ": expected key=value, got '" + kv + "'");
            std::string key = kv.substr(0, eq);
            double value = parse_number(kv.substr(eq + 1), line_no, key);
            if (key == "cpu") cpu = value;
            else if (key == "mem_mb") mem = static_cast<std::int64_t>(value);
            else if (key == "storage_gb") storage = static_cast<std::int64_t>(value);
            else if (key == "bw_mbit") bw = static_cast<std::int64_t>(value);
            else if (key == "p_min" && kind == "pm") p_min = value;
            else if (key == "p_max" && kind == "pm") p_max = value;
            else throw ParseError(line_no, filename + ": unknown key '" + key + "'");
        }
        if (cpu < 0 || mem < 0 || storage < 0)
            throw ParseError(line_no, filename + ": cpu, mem_mb and storage_gb are required");

        if (kind == "vm") {
            catalog.vm_types.push_back({name, make_resources(cpu, mem, storage, bw)});
        } else {
            catalog.pm_types.push_back({name, make_resources(cpu, mem, storage, bw), p_min, p_max});
        }
    }
    if (catalog.pm_types.empty() && catalog.vm_types.empty())
        throw EmptyTrace(filename + ": catalog file defines no machine types");
    return catalog;
}

MachineCatalog load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open catalog file: " + path);
    return parse_catalog_file(in, path);
}

} // namespace nfvsim

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nfvsim/resources.hpp"

namespace nfvsim {

struct VmTypeSpec {
    std::string name;
    ResourceVector demand;
};

struct PmTypeSpec {
    std::string name;
    ResourceVector capacity;
    double p_min{175.0}; // watts at zero utilization
    double p_max{250.0}; // watts at full CPU utilization
};

struct MachineCatalog {
    std::vector<VmTypeSpec> vm_types;
    std::vector<PmTypeSpec> pm_types;
};

// Built-in EC2-style catalog: 8 VM types, 3 PM pool types. PM bandwidth is
// not part of the published pool table; it defaults to 1000 Mbit/s so
// utilization fractions stay well defined.
const MachineCatalog& default_catalog();

// Key-value catalog file, one machine type per line:
//   vm <name> cpu=<CU> mem_mb=<MB> storage_gb=<GB> [bw_mbit=<Mbit/s>]
//   pm <name> cpu=<CU> mem_mb=<MB> storage_gb=<GB> [bw_mbit=<Mbit/s>] [p_min=<W>] [p_max=<W>]
// '#' lines are comments. Replaces the built-in catalog wholesale.
MachineCatalog parse_catalog_file(std::istream& in, const std::string& filename);
MachineCatalog load_catalog_file(const std::string& path);

} // namespace nfvsim

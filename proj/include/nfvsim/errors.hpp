#pragma once

#include <stdexcept>
#include <string>

namespace nfvsim {

// Base class for everything the simulator throws.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroCapacity : SimError {
    explicit ZeroCapacity(const std::string& msg = "capacity component is zero") : SimError(msg) {}
};

struct InvalidSample : SimError {
    explicit InvalidSample(const std::string& msg) : SimError(msg) {}
};

struct NegativeInterval : SimError {
    explicit NegativeInterval(const std::string& msg = "t1 < t0") : SimError(msg) {}
};

struct ParseError : SimError {
    int line;
    ParseError(int line_no, const std::string& msg)
        : SimError("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

struct RangeError : SimError {
    int line;
    RangeError(int line_no, const std::string& msg)
        : SimError("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

struct EmptyTrace : SimError {
    explicit EmptyTrace(const std::string& msg = "trace has no values") : SimError(msg) {}
};

struct SpecError : SimError {
    explicit SpecError(const std::string& msg) : SimError(msg) {}
};

struct PlacementFailed : SimError {
    int vm_id;
    explicit PlacementFailed(int vm, const std::string& msg)
        : SimError(msg), vm_id(vm) {}
};

struct NoHosts : SimError {
    explicit NoHosts(const std::string& msg = "no powered-on hosts") : SimError(msg) {}
};

struct NoVm : SimError {
    explicit NoVm(const std::string& msg = "host has no VMs") : SimError(msg) {}
};

struct InvariantViolation : SimError {
    explicit InvariantViolation(const std::string& msg) : SimError(msg) {}
};

struct ConfigError : SimError {
    explicit ConfigError(const std::string& msg) : SimError(msg) {}
    ConfigError(const std::string& file, int line, const std::string& msg)
        : SimError(file + ":" + std::to_string(line) + ": " + msg) {}
};

} // namespace nfvsim

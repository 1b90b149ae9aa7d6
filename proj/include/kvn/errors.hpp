#pragma once

#include <stdexcept>
#include <string>

namespace kvn {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a gaussian-only code path receives a Hamiltonian with cubic
// terms; callers should route such Hamiltonians to the Fock engine.
struct UnsupportedHamiltonianError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LeakageError : std::runtime_error {
    LeakageError(const std::string& msg, double measured)
        : std::runtime_error(msg), leakage(measured) {}
    double leakage;
};

// Classical integrator produced a non-finite state.
struct BlowUpError : std::runtime_error {
    BlowUpError(const std::string& msg, double t)
        : std::runtime_error(msg), last_valid_time(t) {}
    double last_valid_time;
};

}  // namespace kvn

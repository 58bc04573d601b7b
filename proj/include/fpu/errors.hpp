#pragma once

#include <stdexcept>
#include <string>

namespace fpu {

// Non-finite state detected during propagation; usually signals a timestep
// too large for the current parameters.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fpu

#pragma once

#include <stdexcept>
#include <string>

namespace decaylab {

// Invalid scalar arguments (out-of-range exponents, bad step sizes, ...).
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operands live on different grids / time meshes.
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Complex data fed to an operator that is defined for real fields only.
struct type_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Iteration failures (Newton stagnation, singular linear solves).
struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace decaylab

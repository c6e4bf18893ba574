#pragma once

#include <stdexcept>
#include <string>

namespace lockin {

// Error taxonomy. The CLI maps these onto exit codes:
//   argument/structural/config -> 1 (usage), numeric/search -> 2, io -> 3.

// Caller passed an out-of-range or inconsistent argument.
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input data violates a structural invariant (dimension mismatch etc).
struct structural_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed (non-convergence, empty spectrum, ...).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A bracketing/bisection search could not locate its target.
struct search_error : numeric_error {
    using numeric_error::numeric_error;
};

// Configuration file problems; messages carry line numbers where known.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem/read/write problems.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lockin

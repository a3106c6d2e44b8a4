#pragma once

#include <stdexcept>

namespace hcd {

// Bad configuration, command-line arguments, or input files. The CLI maps
// this to exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure while computing (trajectory divergence, degenerate data,
// grid collapse, ...). The CLI maps this to exit code 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hcd

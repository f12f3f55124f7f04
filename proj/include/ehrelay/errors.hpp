#pragma once

#include <stdexcept>

namespace ehrelay {

// Invalid user-supplied configuration or parameter set.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical routine could not reach its accuracy target.
struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ehrelay

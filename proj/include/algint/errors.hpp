#pragma once

#include <stdexcept>
#include <string>

namespace algint {

// Validation problems (bad degree, malformed interval, ...) map to CLI exit 1.
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Enumeration budget exceeded; CLI exit 2.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested quadrature tolerance not achieved within the evaluation budget;
// CLI exit 2.
struct tolerance_error : std::runtime_error {
    explicit tolerance_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace algint

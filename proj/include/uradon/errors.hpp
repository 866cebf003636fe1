#pragma once

#include <stdexcept>
#include <string>

namespace uradon {

/// Invalid argument or precondition violation (CLI exit code 2).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested combination is outside the implemented closed forms; the caller
/// should fall back to a numeric route (CLI exit code 2).
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A quadrature or iteration failed to converge (CLI exit code 3).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace uradon

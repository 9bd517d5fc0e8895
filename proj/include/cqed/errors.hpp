// errors.hpp — Exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonFiniteInput : std::runtime_error {
    explicit NonFiniteInput(const std::string& msg) : std::runtime_error(msg) {}
};

struct FockCutoffNotConverged : std::runtime_error {
    explicit FockCutoffNotConverged(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cqed

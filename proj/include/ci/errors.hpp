#pragma once

#include <stdexcept>
#include <string>

namespace ci {

// Bad configuration or invariant violation at setup time. CLI exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure during propagation (norm drift, degenerate fit, ...). CLI exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two-level vs three-level consistency check failed in its validity regime. CLI exit code 4.
class oracle_error : public std::runtime_error {
public:
    explicit oracle_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ci

#pragma once

#include <stdexcept>
#include <string>

namespace natp {

// Precondition violations: bad parameter ranges, malformed input.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Configured budget exceeded: memory, value size, sieve extent.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace natp

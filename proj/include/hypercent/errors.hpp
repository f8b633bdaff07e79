#pragma once

#include <stdexcept>
#include <string>

namespace hypercent {

// Malformed or inconsistent external input (files, CLI payloads).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated operation contract: bad parameter ranges, domain violations,
// numeric breakdown during iteration.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hypercent

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mvol {

/// Malformed input text (rational literals, JSON documents).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sizes or ambient dimensions of the arguments do not match.
class DimensionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/**
 * The mixed-cell engine could not find a generic lifting within its retry
 * budget. Carries the seed of the last attempt so the run can be reproduced.
 */
class NonGenericLiftingError : public std::runtime_error {
public:
    NonGenericLiftingError(const std::string& what, std::uint64_t last_seed)
        : std::runtime_error(what), last_seed_(last_seed) {}

    std::uint64_t last_seed() const noexcept { return last_seed_; }

private:
    std::uint64_t last_seed_;
};

}  // namespace mvol

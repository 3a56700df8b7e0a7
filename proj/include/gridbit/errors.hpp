#pragma once

#include <stdexcept>
#include <string>

namespace gridbit {

/// Malformed input data (CSV syntax, bad numbers, broken structure).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A value or combination of values violates a documented contract.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds what an exhaustive computation is willing to handle.
struct CapacityError : ValidationError {
    using ValidationError::ValidationError;
};

} // namespace gridbit

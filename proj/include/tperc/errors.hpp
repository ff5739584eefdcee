// Error categories shared by the library and the command-line driver.
#pragma once

#include <stdexcept>
#include <string>

namespace tperc {

// Bad caller input (a > b, wrong domain kind, partition mismatch, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Site not contained in the domain it was queried against.
struct DomainError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Numeric argument outside a supported evaluation range (series radius, x_max, ...).
struct RangeError : std::range_error {
    using std::range_error::range_error;
};

// Linear algebra failure (rank-deficient design matrix).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tperc

#pragma once

#include <stdexcept>
#include <string>

namespace affrigid {

// Invalid arguments and violated preconditions are reported as std::domain_error.

/// An iterative algorithm failed to converge or produced a non-finite result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request exceeds a configured resource limit (grid size, label size, memory).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace affrigid

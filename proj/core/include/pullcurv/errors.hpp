#pragma once

#include <stdexcept>
#include <string>

namespace pullcurv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input is off the admitted domain (non-unit vector, bad parameter, ...).
struct DomainError : Error {
    using Error::Error;
};

// Constraint Jacobian lost rank where a regular point was required.
struct SingularPointError : Error {
    using Error::Error;
};

// Newton projection onto the constraint set failed to converge.
struct RetractionError : Error {
    using Error::Error;
};

// Closest-point projection found competing minima (outside the tube).
struct AmbiguityError : Error {
    using Error::Error;
};

// A check was invoked with its stated precondition violated.
struct PreconditionError : Error {
    using Error::Error;
};

// Fiber sampling found no solutions.
struct EmptyFiberError : Error {
    using Error::Error;
};

}  // namespace pullcurv

#ifndef VDPRG_ERRORS_HPP
#define VDPRG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vdprg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Adaptive integrator: required step fell below 1e-14 * |t_end - t0|.
class StepUnderflow : public Error {
public:
    using Error::Error;
};

// A state component overflowed or became NaN during integration.
class NonFinite : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

// The flow-equation linear system is inconsistent or rank deficient
// at the requested point.
class SingularSystem : public Error {
public:
    using Error::Error;
};

// Case-2 closed forms require B0 = sign * sqrt(mu1/mu2) * A0.
class ManifoldViolation : public Error {
public:
    using Error::Error;
};

// (mu1 - mu2)^2 == 4 omega^2 makes the resummed frequencies blow up.
class ResonantDenominator : public Error {
public:
    using Error::Error;
};

// PT image is only defined for real phase-space points.
class NonRealState : public Error {
public:
    using Error::Error;
};

// Eigensolver exceeded its iteration budget.
class NoConvergence : public Error {
public:
    using Error::Error;
};

// Bisection bracket does not straddle the transition.
class BadBracket : public Error {
public:
    using Error::Error;
};

// Trajectory does not span enough oscillation periods.
class TooShort : public Error {
public:
    using Error::Error;
};

} // namespace vdprg

#endif

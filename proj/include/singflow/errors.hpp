#pragma once

#include <stdexcept>
#include <string>

namespace singflow {

// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad invocation or configuration (CLI exit code 2).
class UsageError : public Error {
public:
    using Error::Error;
};

// Any failure of a numerical module (CLI exit code 3).
class NumericalError : public Error {
public:
    using Error::Error;
};

#define SINGFLOW_NUMERICAL_ERROR(Name)                      \
    class Name : public NumericalError {                    \
    public:                                                 \
        explicit Name(const std::string& what)              \
            : NumericalError(std::string(#Name ": ") + what) {} \
    };

// numerics
SINGFLOW_NUMERICAL_ERROR(NonFiniteState)
SINGFLOW_NUMERICAL_ERROR(SingularSystem)
SINGFLOW_NUMERICAL_ERROR(NoBracket)
SINGFLOW_NUMERICAL_ERROR(DomainError)
SINGFLOW_NUMERICAL_ERROR(ShapeError)

// conical
SINGFLOW_NUMERICAL_ERROR(NonPhysicalDensity)
SINGFLOW_NUMERICAL_ERROR(VacuumReached)
SINGFLOW_NUMERICAL_ERROR(NoShockSolution)
SINGFLOW_NUMERICAL_ERROR(SolverFailure)
SINGFLOW_NUMERICAL_ERROR(DetachedShock)
SINGFLOW_NUMERICAL_ERROR(NotSupersonic)
SINGFLOW_NUMERICAL_ERROR(ResolutionError)
SINGFLOW_NUMERICAL_ERROR(HyperbolicityLost)
SINGFLOW_NUMERICAL_ERROR(GeometryCollapse)
SINGFLOW_NUMERICAL_ERROR(StepTooLarge)

// prandtl
SINGFLOW_NUMERICAL_ERROR(UpwindBreakdown)

// vortex
SINGFLOW_NUMERICAL_ERROR(DegenerateSpec)
SINGFLOW_NUMERICAL_ERROR(NotNMS)
SINGFLOW_NUMERICAL_ERROR(AxisCollision)

#undef SINGFLOW_NUMERICAL_ERROR

} // namespace singflow

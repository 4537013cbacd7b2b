#pragma once

#include <stdexcept>
#include <string>

namespace speckit {

/// Bad argument values (empty sets, non-positive sizes, malformed spec files).
struct InvalidParameter : std::invalid_argument {
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Out-of-range basis index on a finite-dimensional operator.
struct IndexError : std::out_of_range {
    explicit IndexError(const std::string& what) : std::out_of_range(what) {}
};

/// Numerical failure (ill-conditioned data, violated convergence preconditions).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct IllConditionedRoots : NumericalError {
    explicit IllConditionedRoots(const std::string& what) : NumericalError(what) {}
};

struct NotInResolventDomain : NumericalError {
    explicit NotInResolventDomain(const std::string& what) : NumericalError(what) {}
};

struct QuadratureError : NumericalError {
    explicit QuadratureError(const std::string& what) : NumericalError(what) {}
};

/// Requested the exact compressed product for an operator where only the
/// truncated two-parameter family is computable.
struct NotFullyComputable : InvalidParameter {
    explicit NotFullyComputable(const std::string& what) : InvalidParameter(what) {}
};

} // namespace speckit

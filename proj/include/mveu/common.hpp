#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mveu {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (e.g. log utility at x <= 0, mixture weight outside [0,1]).
class domain_error : public error {
public:
    using error::error;
};

/// A stated precondition of an operation does not hold
/// (e.g. a Buridan-violation check on a pair that is not merit-indifferent).
class precondition_error : public error {
public:
    using error::error;
};

/// A numerical verification gate failed (e.g. a construction whose
/// recomputed moments do not reproduce their targets).
class numeric_error : public error {
public:
    using error::error;
};

/// Default verification tolerance used by construction gates and
/// round-trip checks. Callers may pass their own.
inline constexpr double kVerifyTol = 1e-9;

/// Absolute tolerance on the probability scale.
inline constexpr double kProbTol = 1e-12;

}  // namespace mveu

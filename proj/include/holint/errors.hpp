#pragma once

#include <stdexcept>
#include <string>

namespace holint {

// Base class of every error thrown by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Binary series operation on operands of different truncation order.
struct OrderMismatchError : Error {
    using Error::Error;
};

// Inversion of a series with vanishing constant term.
struct NonUnitError : Error {
    using Error::Error;
};

// Structurally degenerate input (zero eigenvalue, zero form, ...).
struct DegenerateInputError : Error {
    using Error::Error;
};

// Substitution that would create a constant term (truncation undefined).
struct InvalidSubstitutionError : Error {
    using Error::Error;
};

// Linearly dependent input where independence is required.
struct RankError : Error {
    using Error::Error;
};

// Inputs that contradict each other (e.g. non-resonant exponents).
struct InconsistencyError : Error {
    using Error::Error;
};

// Blow-up requested at a regular point.
struct NotSingularError : Error {
    using Error::Error;
};

// Iteration/step budget exhausted.
struct BudgetError : Error {
    using Error::Error;
};

// Requested accuracy not reachable (truncation or float refinement).
struct PrecisionError : Error {
    using Error::Error;
};

// Numeric evaluation left the trusted polydisk.
struct DomainEscapeError : Error {
    using Error::Error;
};

// Operation invoked on an object in the wrong configuration/shape.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace holint

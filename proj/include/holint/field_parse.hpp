#pragma once

#include <optional>
#include <string>

#include "holint/vector_field.hpp"

namespace holint {

struct ParseError : Error {
    int line, col;
    ParseError(const std::string& msg, int l, int c)
        : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

// Parses a germ description of the form
//
//   lambda = 1, 2, -3;
//   a1 = 1/2*z + x*y;        # series in x, y, z with exact coefficients
//   a2 = 0;
//   a3 = (1/2+3/4i)*z^2;
//   order = 6;
//
// Statements may appear in any order; omitted a_j default to 0. '#' starts a
// comment. order_override replaces the file's order (which then becomes
// optional). Validates the germ invariants: nonzero eigenvalues, a_j without
// constant term, term degrees within the order, order >= 2.
VectorFieldGerm parse_field(const std::string& text, std::optional<int> order_override = std::nullopt);

// Canonical emitter; parse_field(print_field(X)) == X exactly.
std::string print_field(const VectorFieldGerm& X);

// Single scalar literal such as "-3/4" or "1/2+1/3i" (used for --z0 values).
GaussianRational parse_gaussian_literal(const std::string& text);

} // namespace holint

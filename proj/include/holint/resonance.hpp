#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "holint/vector_field.hpp"

namespace holint {

using EigenvalueTriple = std::array<GaussianRational, 3>;

// Outcome of the real-line / sign-pattern test on the eigenvalues.
struct StarReport {
    bool holds = false;
    // Primitive integer direction of the real line through 0 containing the
    // eigenvalues (as a point pair in R^2); (0,0) when the test fails.
    std::pair<Rational, Rational> line_direction{0, 0};
    int distinguished_index = -1; // slot of the isolated eigenvalue lambda(X), 0-based
    GaussianRational distinguished_value;
};

// Eigenvalues written as unit * (m, n, -k) after permuting slots:
// lambda[permutation[i]] == unit * (m, n, -k)[i], m,n,k positive coprime.
struct IntegerDirection {
    long m = 0, n = 0, k = 0;
    GaussianRational unit;
    std::array<int, 3> permutation{0, 1, 2};

    std::array<GaussianRational, 3> signed_triple() const {
        return {GaussianRational(m), GaussianRational(n), GaussianRational(-k)};
    }
};

// Exponents of a monomial first integral candidate F = (x^N, x^M).
struct ExponentPair {
    MultiIndex<3> N, M;
};

// Residuals (i_X df1, i_X df2) plus the monomial-sense transversality flag.
struct FirstIntegralCheck {
    Series3 r1, r2;
    bool transversal = false;
};

// F(X)-invariant quotient x^num / x^den extracted from two resonant
// exponents; adapted means the two nonzero entries of E have opposite signs.
struct MeromorphicInvariant {
    std::array<long, 3> exponent{}; // E, in the original coordinates
    bool adapted = false;
    MultiIndex<3> numerator, denominator;
};

// Decides whether the eigenvalues sit on a real line through 0 with exactly
// one of them isolated on its side; that one is lambda(X).
StarReport check_star(const EigenvalueTriple& lambda);

// All N in N^3 off the axes with |N| <= degree_bound and lambda . N == 0,
// in graded-lex order.
std::vector<MultiIndex<3>> enumerate_resonances(const EigenvalueTriple& lambda, int degree_bound);

// Recovers the integer direction from two independent resonant exponents via
// their cross product, normalized to (+,+,-) with the negative slot third.
IntegerDirection preparation_direction(const MultiIndex<3>& N, const MultiIndex<3>& M,
                                       const EigenvalueTriple& lambda);

// Integer (+,+,-) shape of the eigenvalues if one exists; the necessary
// first-jet condition for a holomorphic first integral.
std::optional<IntegerDirection> first_jet_test(const EigenvalueTriple& lambda);

// N = (k,0,m), M = (0,k,n) in the direction's coordinates, mapped back; both
// solve m*i1 + n*i2 - k*i3 = 0, lie off the axes and are independent.
ExponentPair monomial_first_integral(const IntegerDirection& dir);

// True iff Sat(d(x^N) ^ d(x^M)) is nonzero, computed through the series
// calculus; equivalent to integer linear independence of N and M.
bool check_transversal(const MultiIndex<3>& N, const MultiIndex<3>& M);

// Contracts X with both differentials and tests transversality of the
// saturated wedge in the monomial sense (either two of its coefficients
// survive saturation or the single survivor is a unit).
FirstIntegralCheck verify_first_integral(const VectorFieldGerm& X, const Series3& f1, const Series3& f2);

// E = q3 * P - p3 * Q in the direction's coordinates (so E3 = 0 and
// lambda . E = 0); numerator/denominator are the positive/negative parts.
MeromorphicInvariant meromorphic_invariant(const MultiIndex<3>& P, const MultiIndex<3>& Q,
                                           const IntegerDirection& dir);

// The same foliation rescaled and permuted so the eigenvalues are exactly
// (m, n, -k); divides the field by the direction's unit (a tangent field).
VectorFieldGerm to_normal_shape(const VectorFieldGerm& X, const IntegerDirection& dir);

} // namespace holint

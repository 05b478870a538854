#pragma once

#include "holint/series.hpp"

namespace holint {

// P dx + Q dy + R dz with series coefficients of equal order.
struct OneForm3 {
    Series3 P, Q, R;

    OneForm3(Series3 p, Series3 q, Series3 r) : P(std::move(p)), Q(std::move(q)), R(std::move(r)) {
        if (P.order() != Q.order() || P.order() != R.order())
            throw OrderMismatchError("one-form components have different orders");
    }
    static OneForm3 zero(int order) { return {Series3(order), Series3(order), Series3(order)}; }

    int order() const { return P.order(); }
    bool is_zero() const { return P.is_zero() && Q.is_zero() && R.is_zero(); }

    friend bool operator==(const OneForm3& a, const OneForm3& b) {
        return a.P == b.P && a.Q == b.Q && a.R == b.R;
    }
};

// c12 dx^dy + c13 dx^dz + c23 dy^dz; only the independent coefficients are
// stored, antisymmetry is structural.
struct TwoForm3 {
    Series3 c12, c13, c23;

    TwoForm3(Series3 a, Series3 b, Series3 c) : c12(std::move(a)), c13(std::move(b)), c23(std::move(c)) {
        if (c12.order() != c13.order() || c12.order() != c23.order())
            throw OrderMismatchError("two-form components have different orders");
    }

    int order() const { return c12.order(); }
    bool is_zero() const { return c12.is_zero() && c13.is_zero() && c23.is_zero(); }

    friend bool operator==(const TwoForm3& a, const TwoForm3& b) {
        return a.c12 == b.c12 && a.c13 == b.c13 && a.c23 == b.c23;
    }
};

// df as a one-form; the order drops by one.
OneForm3 d_of_function(const Series3& f);

// Exterior derivative, c12 = Q_x - P_y etc.; the order drops by one.
TwoForm3 exterior_derivative(const OneForm3& w);

// a ^ b, components truncated to the smaller of the two orders.
TwoForm3 wedge(const OneForm3& a, const OneForm3& b);

// Coefficient of dx^dy^dz in a ^ B.
Series3 wedge13(const OneForm3& a, const TwoForm3& B);

template <typename FormT>
struct Saturation {
    MultiIndex<3> monomial; // the common factor x^J that was removed
    FormT reduced;          // order lowered by |J|
};

// Divides out the largest monomial dividing every coefficient term.
// Throws DegenerateInputError on the zero form.
Saturation<OneForm3> saturate(const OneForm3& w);
Saturation<TwoForm3> saturate(const TwoForm3& w);

} // namespace holint

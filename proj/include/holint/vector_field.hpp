#pragma once

#include <array>

#include "holint/forms.hpp"
#include "holint/series.hpp"

namespace holint {

// Germ of a non-degenerate generic vector field on (C^3,0) in the invariant
// shape l1*x*(1+a1) d/dx + l2*y*(1+a2) d/dy + l3*z*(1+a3) d/dz. Storing the
// a_j keeps the coordinate-plane invariance structural; the constructor
// enforces nonzero eigenvalues and a_j in the maximal ideal.
class VectorFieldGerm {
public:
    VectorFieldGerm(std::array<GaussianRational, 3> lambda, std::array<Series3, 3> a)
        : lambda_(std::move(lambda)), a_(std::move(a)) {
        for (const auto& l : lambda_)
            if (l.is_zero()) throw DegenerateInputError("vector field has a zero eigenvalue");
        int d = a_[0].order();
        for (const auto& s : a_) {
            if (s.order() != d) throw OrderMismatchError("a_j truncation orders differ");
            if (!s.in_maximal_ideal()) throw ConfigError("a_j has a nonzero constant term");
        }
    }

    static VectorFieldGerm linear(std::array<GaussianRational, 3> lambda, int order) {
        return VectorFieldGerm(std::move(lambda), {Series3(order), Series3(order), Series3(order)});
    }

    const std::array<GaussianRational, 3>& lambda() const { return lambda_; }
    const Series3& a(int j) const { return a_[static_cast<size_t>(j)]; }
    int order() const { return a_[0].order(); }

    // Component j as a series, l_j * x_j * (1 + a_j); exact at order()+1.
    Series3 component(int j) const {
        Series3 u = Series3::constant(order(), GaussianRational(1)) + a_[static_cast<size_t>(j)];
        return mul_monomial(u, Index3::unit(j), lambda_[static_cast<size_t>(j)]);
    }

    friend bool operator==(const VectorFieldGerm& a, const VectorFieldGerm& b) {
        return a.lambda_ == b.lambda_ && a.a_ == b.a_;
    }

private:
    std::array<GaussianRational, 3> lambda_;
    std::array<Series3, 3> a_;
};

// i_X w = X1*P + X2*Q + X3*R, truncated to the provably exact order
// min(X.order()+1, w.order()).
Series3 contract(const VectorFieldGerm& X, const OneForm3& w);

} // namespace holint

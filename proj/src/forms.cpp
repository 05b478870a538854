#include "holint/forms.hpp"

#include <algorithm>

namespace holint {

namespace {

// Truncates both to the common (smaller) order and multiplies.
Series3 mul_aligned(const Series3& a, const Series3& b) {
    int m = std::min(a.order(), b.order());
    return truncated(a, m) * truncated(b, m);
}

Series3 sub_aligned(const Series3& a, const Series3& b) {
    int m = std::min(a.order(), b.order());
    return truncated(a, m) - truncated(b, m);
}

Series3 add_aligned(const Series3& a, const Series3& b) {
    int m = std::min(a.order(), b.order());
    return truncated(a, m) + truncated(b, m);
}

MultiIndex<3> common_monomial(std::initializer_list<const Series3*> parts) {
    MultiIndex<3> J;
    bool any = false;
    for (const Series3* s : parts) {
        for (const auto& [I, c] : s->terms()) {
            if (!any) {
                J = I;
                any = true;
            } else {
                for (int v = 0; v < 3; ++v) J[v] = std::min(J[v], I[v]);
            }
        }
    }
    if (!any) throw DegenerateInputError("saturation of the zero form");
    return J;
}

} // namespace

OneForm3 d_of_function(const Series3& f) {
    return {derivative(f, 0), derivative(f, 1), derivative(f, 2)};
}

TwoForm3 exterior_derivative(const OneForm3& w) {
    return {derivative(w.Q, 0) - derivative(w.P, 1),
            derivative(w.R, 0) - derivative(w.P, 2),
            derivative(w.R, 1) - derivative(w.Q, 2)};
}

TwoForm3 wedge(const OneForm3& a, const OneForm3& b) {
    return {sub_aligned(mul_aligned(a.P, b.Q), mul_aligned(a.Q, b.P)),
            sub_aligned(mul_aligned(a.P, b.R), mul_aligned(a.R, b.P)),
            sub_aligned(mul_aligned(a.Q, b.R), mul_aligned(a.R, b.Q))};
}

Series3 wedge13(const OneForm3& a, const TwoForm3& B) {
    // dx^(dy^dz) etc: P*c23 - Q*c13 + R*c12.
    return add_aligned(sub_aligned(mul_aligned(a.P, B.c23), mul_aligned(a.Q, B.c13)),
                       mul_aligned(a.R, B.c12));
}

Saturation<OneForm3> saturate(const OneForm3& w) {
    MultiIndex<3> J = common_monomial({&w.P, &w.Q, &w.R});
    return {J, OneForm3(divide_monomial(w.P, J), divide_monomial(w.Q, J), divide_monomial(w.R, J))};
}

Saturation<TwoForm3> saturate(const TwoForm3& w) {
    MultiIndex<3> J = common_monomial({&w.c12, &w.c13, &w.c23});
    return {J, TwoForm3(divide_monomial(w.c12, J), divide_monomial(w.c13, J), divide_monomial(w.c23, J))};
}

} // namespace holint

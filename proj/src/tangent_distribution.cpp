#include "holint/tangent_distribution.hpp"

#include <algorithm>
#include <optional>

namespace holint {

namespace {

// m, n, k as exact scalars from the (m, n, -k) eigenvalue shape.
struct ShapeMNK {
    GaussianRational m, n, k;
};

ShapeMNK shape_of(const VectorFieldGerm& X) {
    const auto& lam = X.lambda();
    auto positive_real = [](const GaussianRational& v) { return v.is_real() && sgn(v.re()) > 0; };
    if (!positive_real(lam[0]) || !positive_real(lam[1]) || !positive_real(-lam[2]))
        throw ConfigError("field is not in the (m,n,-k) eigenvalue shape");
    return {lam[0], lam[1], -lam[2]};
}

Series3 mul_aligned(const Series3& a, const Series3& b) {
    int m = std::min(a.order(), b.order());
    return truncated(a, m) * truncated(b, m);
}

Series3 add_list(std::vector<Series3> parts) {
    int m = parts[0].order();
    for (const auto& p : parts) m = std::min(m, p.order());
    Series3 acc(m);
    for (const auto& p : parts) acc = acc + truncated(p, m);
    return acc;
}

} // namespace

VectorFieldGerm normalize(const VectorFieldGerm& X) {
    int d = X.order();
    Series3 one = Series3::constant(d, GaussianRational(1));
    Series3 inv = invert_unit(one + X.a(1));
    std::array<Series3, 3> a{(one + X.a(0)) * inv - one, Series3(d), (one + X.a(2)) * inv - one};
    return VectorFieldGerm(X.lambda(), std::move(a));
}

OneForm3 build_one_form(const VectorFieldGerm& X, const DistributionSpec& spec) {
    ShapeMNK s = shape_of(X);
    int d = X.order();
    Series3 one = Series3::constant(d, GaussianRational(1));
    Series3 abar = one + X.a(0);
    Series3 bbar = one + X.a(1);
    Series3 cbar = one + X.a(2);
    Series3 p = truncated(spec.p_bar, std::min(d, spec.p_bar.order()));
    Series3 q = truncated(spec.q_bar, std::min(d, spec.q_bar.order()));
    Series3 zcq = mul_monomial(mul_aligned(cbar, q), Index3::unit(2)); // z c_bar q_bar
    Series3 zcp = mul_monomial(mul_aligned(cbar, p), Index3::unit(2));
    int m0 = std::min(bbar.order(), zcq.order());
    Series3 P = mul_monomial(truncated(bbar, m0) + truncated(zcq, m0), Index3::unit(1), s.n);
    Series3 Q = mul_monomial(truncated(abar, m0) + truncated(zcp, m0), Index3::unit(0), -s.m);
    Series3 rmix = mul_aligned(abar, q) - mul_aligned(bbar, p);
    Series3 R = mul_monomial(mul_monomial(rmix, Index3::unit(0), s.m * s.n / s.k), Index3::unit(1));
    int ord = std::min({P.order(), Q.order(), R.order()});
    return {truncated(P, ord), truncated(Q, ord), truncated(R, ord)};
}

Series3 integrability_residual(const OneForm3& w) {
    Series3 t1 = mul_aligned(derivative(w.Q, 0) - derivative(w.P, 1), w.R);
    Series3 t2 = mul_aligned(derivative(w.R, 0) - derivative(w.P, 2), w.Q);
    Series3 t3 = mul_aligned(derivative(w.R, 1) - derivative(w.Q, 2), w.P);
    return add_list({t1, -t2, t3});
}

Series3 pde_residual(const VectorFieldGerm& X, const Series3& p_bar) {
    ShapeMNK s = shape_of(X);
    if (!X.a(1).is_zero()) throw ConfigError("pde residual requires the normalized field (a2 = 0)");
    int d = X.order();
    const Series3& a = X.a(0);
    const Series3& c = X.a(2);
    Series3 one = Series3::constant(d, GaussianRational(1));
    Series3 cbar = one + c;
    Series3 abar = one + a;
    Series3 p = p_bar;

    Series3 term1 = derivative(a, 2) * s.k; // k a_z
    // (m x a_x + k c_bar + k z c_z) p_bar
    Series3 coef = add_list({mul_monomial(derivative(a, 0), Index3::unit(0), s.m), cbar * s.k,
                             mul_monomial(derivative(c, 2), Index3::unit(2), s.k)});
    Series3 term2 = mul_aligned(coef, p);
    // m x z c_x p_bar^2
    Series3 term3 = mul_monomial(mul_aligned(derivative(c, 0), mul_aligned(p, p)),
                                 Index3{{1, 0, 1}}, s.m);
    // - m x a_bar p_bar_x
    Series3 term4 = mul_monomial(mul_aligned(abar, derivative(p, 0)), Index3::unit(0), -s.m);
    // - n y p_bar_y
    Series3 term5 = mul_monomial(derivative(p, 1), Index3::unit(1), -s.n);
    // k z c_bar p_bar_z
    Series3 term6 = mul_monomial(mul_aligned(cbar, derivative(p, 2)), Index3::unit(2), s.k);
    return add_list({term1, term2, term3, term4, term5, term6});
}

JetSolveReport solve_pde_jet(const VectorFieldGerm& X, const CauchyData& data, int order) {
    ShapeMNK s = shape_of(X);
    if (!X.a(1).is_zero()) throw ConfigError("jet solver requires the normalized field (a2 = 0)");
    if (order > X.order() - 1)
        throw PrecisionError("solve order exceeds the field truncation minus one");

    const int plane_var = static_cast<int>(data.plane);
    auto plane_index = [&](const MultiIndex<3>& I) -> std::optional<MultiIndex<2>> {
        if (I[plane_var] != 0) return std::nullopt;
        MultiIndex<2> J;
        int at = 0;
        for (int v = 0; v < 3; ++v)
            if (v != plane_var) J[at++] = I[v];
        return J;
    };

    JetSolveReport report(order);
    int first_obstructed = order + 1;
    for (int deg = 0; deg <= order; ++deg) {
        // All degree-deg unknowns enter their own monomial's equation only
        // through the diagonal (the remaining terms lag by at least one
        // degree), so one residual evaluation per level suffices.
        Series3 residual = pde_residual(X, report.p_bar);
        for (int i = deg; i >= 0; --i)
            for (int j = deg - i; j >= 0; --j) {
                MultiIndex<3> I{{i, j, deg - i - j}};
                GaussianRational diag = s.k * GaussianRational(1 + I[2]) - s.n * GaussianRational(I[1]) -
                                        s.m * GaussianRational(I[0]);
                GaussianRational rhs = residual.coeff(I);
                if (!diag.is_zero()) {
                    report.p_bar.add_term(I, -(rhs / diag));
                    continue;
                }
                report.resonant_indices.push_back(I);
                GaussianRational value;
                if (auto J = plane_index(I)) value = data.phi.coeff(*J);
                report.p_bar.add_term(I, value);
                if (!rhs.is_zero()) {
                    report.obstructions.push_back(I);
                    first_obstructed = std::min(first_obstructed, deg);
                }
            }
    }
    std::sort(report.resonant_indices.begin(), report.resonant_indices.end());
    std::sort(report.obstructions.begin(), report.obstructions.end());
    report.residual_order = report.obstructions.empty() ? order : first_obstructed - 1;
    return report;
}

} // namespace holint

#pragma once

#include <vector>

#include "holint/forms.hpp"
#include "holint/vector_field.hpp"

namespace holint {

// The (p_bar, q_bar) data of a tangent distribution candidate, in the
// notation with unit factors split off (a_bar = 1 + a etc.). The flags
// record which of the two foliation-preserving reductions were applied.
struct DistributionSpec {
    Series3 p_bar, q_bar;
    bool b_normalized = false; // field divided by its second unit (b = 0)
    bool q_normalized = false; // q_bar reduced to 0

    DistributionSpec(Series3 p, Series3 q) : p_bar(std::move(p)), q_bar(std::move(q)) {
        if (p_bar.order() != q_bar.order())
            throw OrderMismatchError("distribution spec component orders differ");
        q_normalized = q_bar.is_zero();
    }
};

enum class CauchyPlane { x = 0, y = 1, z = 2 };

// Initial datum on a coordinate plane; must lie in the maximal ideal.
struct CauchyData {
    CauchyPlane plane = CauchyPlane::z;
    Series2 phi;

    explicit CauchyData(Series2 f, CauchyPlane p = CauchyPlane::z) : plane(p), phi(std::move(f)) {
        if (!phi.in_maximal_ideal()) throw ConfigError("Cauchy datum has a constant term");
    }
};

struct JetSolveReport {
    Series3 p_bar;
    std::vector<MultiIndex<3>> resonant_indices; // diagonal k(1+l) - m*i - n*j vanished
    std::vector<MultiIndex<3>> obstructions;     // forced nonzero rhs at a resonant index
    int residual_order = -1;                     // residual has no terms of degree <= this

    explicit JetSolveReport(int order) : p_bar(order) {}
    bool success() const { return obstructions.empty(); }
};

// Divides the field by its second unit factor 1 + a2 (a tangent field, same
// foliation); afterwards a2 = 0 exactly.
VectorFieldGerm normalize(const VectorFieldGerm& X);

// P = n y (b_bar + z c_bar q_bar), Q = -m x (a_bar + z c_bar p_bar),
// R = (mn/k) x y (a_bar q_bar - b_bar p_bar) for a field with eigenvalues
// (m, n, -k); i_X w vanishes identically by construction.
OneForm3 build_one_form(const VectorFieldGerm& X, const DistributionSpec& spec);

// (-P_y + Q_x) R - (-P_z + R_x) Q + (-Q_z + R_y) P; equals wedge13(w, dw).
Series3 integrability_residual(const OneForm3& w);

// Left side of the integrability PDE for the normalized field (a2 = 0):
// k a_z + (m x a_x + k c_bar + k z c_z) p_bar + m x z c_x p_bar^2
//   - m x a_bar p_bar_x - n y p_bar_y + k z c_bar p_bar_z.
// Expanding w ^ dw for the built one-form gives exactly (mn/k) x y times
// this expression, so vanishing here is vanishing integrability residual.
Series3 pde_residual(const VectorFieldGerm& X, const Series3& p_bar);

// Degree-by-degree jet solution of the PDE. Each monomial x^i y^j z^l is
// determined by the diagonal coefficient k(1+l) - m*i - n*j; vanishing
// diagonals are free slots filled from the Cauchy datum (when the index lies
// on its plane) or zero, and a nonzero forced right-hand side there is an
// obstruction.
JetSolveReport solve_pde_jet(const VectorFieldGerm& X, const CauchyData& data, int order);

} // namespace holint

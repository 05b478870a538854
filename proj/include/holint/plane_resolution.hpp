#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holint/series.hpp"
#include "holint/vector_field.hpp"

namespace holint {

// Plane foliation germ w = A dy + B dx in the current chart coordinates
// (the first variable plays x, the second y). Stored saturated: the
// constructor rejects a common monomial factor.
struct PlaneFoliationGerm {
    Series2 A, B;
    std::vector<std::string> chart_history;

    PlaneFoliationGerm(Series2 a, Series2 b, std::vector<std::string> history = {});

    int order() const { return A.order(); }
    // Dual vector field (A, -B); contracting it with w gives 0.
    Series2 dual_x() const { return A; }
    Series2 dual_y() const { return -B; }
};

enum class SingKind { regular, reduced, saddle_node, non_reduced };

std::string to_string(SingKind k);

struct SingularityClass {
    SingKind kind = SingKind::regular;
    // (m, n) character of the dual linear part when it has a positive
    // rational eigenvalue ratio: coprime positive pair, coordinate order for
    // a diagonal linear part, descending otherwise.
    std::optional<std::pair<long, long>> linear_type;

    friend bool operator==(const SingularityClass& a, const SingularityClass& b) {
        return a.kind == b.kind && a.linear_type == b.linear_type;
    }
};

struct BlowupChart {
    PlaneFoliationGerm germ;
    int divisor_multiplicity = 0; // power of the divisor variable removed
    bool divisor_invariant = false;
    int divisor_var = 0; // which chart variable cuts the exceptional divisor
};

// Charts y = x*t (coordinates (x,t)) and x = u*y (coordinates (u,y)).
struct BlowupResult {
    BlowupChart chart1, chart2;
};

// One monoidal transform centered at the origin; requires the origin
// singular. Pullback coefficients are divided by the maximal power of the
// divisor variable, and invariance of the divisor is recorded.
BlowupResult blowup_once(const PlaneFoliationGerm& g);

// Classification at an exact point of the chart, reading the linear part of
// the dual field (A, -B) after translating the point to the origin.
SingularityClass classify_singularity(const PlaneFoliationGerm& g,
                                      const GaussianRational& px, const GaussianRational& py);

// One point of the resolution: either a terminal singularity (blown_up
// false) or a blow-up event with the singular points found on its divisor as
// children, canonically ordered.
struct ResolutionNode {
    SingularityClass center;
    bool blown_up = false;
    bool dicritical = false;  // exceptional divisor not invariant
    bool budget_cut = false;  // expansion halted by the blow-up budget
    int divisor_multiplicity = 0;
    std::string chart;
    std::vector<ResolutionNode> children;
};

struct ResolutionTree {
    ResolutionNode root;
    int blowup_count = 0;
    std::vector<std::string> dicritical_components;
    bool budget_exceeded = false;
};

struct ResolutionBudgetError : BudgetError {
    ResolutionTree partial;
    explicit ResolutionBudgetError(ResolutionTree t)
        : BudgetError("blow-up budget exceeded"), partial(std::move(t)) {}
};

// Depth-first reduction: blows up every non-reduced singularity, stopping a
// branch at reduced/saddle-node points or on a dicritical divisor.
ResolutionTree resolve(const PlaneFoliationGerm& g, int max_blowups);

// Number of subtractive Euclid steps from (m,n) to equality.
int euclid_steps(long m, long n);

// The linear chain the subtractive Euclid algorithm predicts for
// w_{m,n} = m x dy - n y dx: one non-reduced node per step plus the terminal
// dicritical blow-up.
ResolutionTree euclid_skeleton(long m, long n);

// Isomorphism of canonical forms: node kinds, linear types and dicritical
// flags; chart labels and divisor multiplicities are ignored.
bool compare_trees(const ResolutionTree& a, const ResolutionTree& b);

std::string tree_to_text(const ResolutionTree& t);
// Compact JSON with canonically ordered children; stable for golden tests.
std::string tree_to_json_string(const ResolutionTree& t);

// w_z0 = m x (1 + a1(x,y,z0)) dy - n y (1 + a2(x,y,z0)) dx for a field
// already in the (m,n,-k) shape.
PlaneFoliationGerm family_restriction(const VectorFieldGerm& X, const GaussianRational& z0);

struct DicriticalSearchResult {
    struct Failure {
        GaussianRational z0;
        std::string message;
        bool budget = false;
    };
    std::vector<std::pair<GaussianRational, ResolutionTree>> hits;
    std::vector<Failure> failures; // per-candidate errors
};

// Resolves the family member at each candidate and keeps those whose tree
// contains a dicritical component.
DicriticalSearchResult dicritical_parameter_search(const VectorFieldGerm& X,
                                                   const std::vector<GaussianRational>& candidates,
                                                   int max_blowups);

} // namespace holint

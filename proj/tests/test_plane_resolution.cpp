#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "holint/plane_resolution.hpp"
#include "test_support.hpp"

using namespace holint;
using holint::testing::Rng;
using G = GaussianRational;

namespace {

PlaneFoliationGerm omega_mn(long m, long n, int order) {
    return PlaneFoliationGerm(Series2::monomial(order, Index2{{1, 0}}, G(m)),
                              Series2::monomial(order, Index2{{0, 1}}, G(-n)));
}

// m x (1 + x A + y B) dy - n y (1 + x C + y D) dx
PlaneFoliationGerm perturbed(long m, long n, const Series2& A, const Series2& B, const Series2& C,
                             const Series2& D, int order) {
    Series2 one = Series2::constant(order, G(1));
    Series2 ua = one + truncated(mul_monomial(A, Index2{{1, 0}}), order) +
                 truncated(mul_monomial(B, Index2{{0, 1}}), order);
    Series2 ub = one + truncated(mul_monomial(C, Index2{{1, 0}}), order) +
                 truncated(mul_monomial(D, Index2{{0, 1}}), order);
    return PlaneFoliationGerm(truncated(mul_monomial(ua, Index2{{1, 0}}, G(m)), order),
                              truncated(mul_monomial(ub, Index2{{0, 1}}, G(-n)), order));
}

const ResolutionNode* non_reduced_child(const ResolutionNode& n) {
    for (const auto& c : n.children)
        if (c.center.kind == SingKind::non_reduced && c.blown_up) return &c;
    return nullptr;
}

} // namespace

TEST_CASE("germ invariants") {
    CHECK_THROWS_AS(PlaneFoliationGerm(Series2(4), Series2(4)), DegenerateInputError);
    // common monomial factor rejected
    CHECK_THROWS_AS(PlaneFoliationGerm(Series2::monomial(4, Index2{{2, 0}}),
                                       Series2::monomial(4, Index2{{1, 1}})),
                    InconsistencyError);
}

TEST_CASE("single blow-up of the radial form") {
    auto br = blowup_once(omega_mn(1, 1, 8));
    // chart 1: x^2 dt, saturated to dt; divisor not invariant
    CHECK(br.chart1.germ.A == Series2::constant(6, G(1)));
    CHECK(br.chart1.germ.B.is_zero());
    CHECK(br.chart1.divisor_multiplicity == 2);
    CHECK(!br.chart1.divisor_invariant);
    CHECK(!br.chart2.divisor_invariant);
}

TEST_CASE("single blow-up of the (2,1) form matches the chart formulas") {
    auto br = blowup_once(omega_mn(2, 1, 8));
    // chart 1: 2x dt + t dx
    CHECK(br.chart1.germ.A == Series2::monomial(7, Index2{{1, 0}}, G(2)));
    CHECK(br.chart1.germ.B == Series2::monomial(7, Index2{{0, 1}}, G(1)));
    CHECK(br.chart1.divisor_multiplicity == 1);
    CHECK(br.chart1.divisor_invariant);
    // chart 2: u dy - y du, the (m-n, n) = (1,1) pattern
    CHECK(br.chart2.germ.A == Series2::monomial(7, Index2{{1, 0}}, G(1)));
    CHECK(br.chart2.germ.B == Series2::monomial(7, Index2{{0, 1}}, G(-1)));
    // truncation order drops by the divisor multiplicity
    CHECK(br.chart1.germ.order() == 8 - br.chart1.divisor_multiplicity);

    PlaneFoliationGerm regular(Series2::constant(6, G(1)), Series2::variable(6, 0));
    CHECK_THROWS_AS(blowup_once(regular), NotSingularError);
}

TEST_CASE("saturation does not change the foliation across a blow-up") {
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        PlaneFoliationGerm g = perturbed(rng.pick(1, 3), rng.pick(1, 3), rng.series<2>(9, 2, 2),
                                         rng.series<2>(9, 2, 2), rng.series<2>(9, 2, 2),
                                         rng.series<2>(9, 2, 2), 9);
        auto br = blowup_once(g);
        // recompute the raw pullback of chart 1 independently
        std::array<Series2, 2> images{Series2::variable(9, 0), Series2::monomial(9, Index2{{1, 1}})};
        Series2 At = substitute(g.A, images);
        Series2 Bt = substitute(g.B, images);
        Series2 raw_dt = truncated(mul_monomial(At, Index2{{1, 0}}), 9);
        Series2 raw_dx = truncated(mul_monomial(At, Index2{{0, 1}}), 9) + Bt;
        // cross product of (A1, B1) with the unsaturated pair vanishes
        int m = br.chart1.germ.order();
        Series2 cross = truncated(br.chart1.germ.A, m) * truncated(raw_dx, m) -
                        truncated(br.chart1.germ.B, m) * truncated(raw_dt, m);
        CHECK(cross.is_zero());
    }
}

TEST_CASE("classification") {
    // 2x dt + t dx: dual eigenvalues (2, -1), reduced
    PlaneFoliationGerm g(Series2::monomial(6, Index2{{1, 0}}, G(2)),
                         Series2::monomial(6, Index2{{0, 1}}, G(1)));
    CHECK(classify_singularity(g, G(0), G(0)).kind == SingKind::reduced);

    // m x dy - n y dx: non-reduced with coordinate-ordered type
    auto c32 = classify_singularity(omega_mn(3, 2, 6), G(0), G(0));
    CHECK(c32.kind == SingKind::non_reduced);
    CHECK(c32.linear_type == std::pair<long, long>(3, 2));
    auto c23 = classify_singularity(omega_mn(2, 3, 6), G(0), G(0));
    CHECK(c23.linear_type == std::pair<long, long>(2, 3));
    // common factors reduce to the primitive pair
    CHECK(classify_singularity(omega_mn(4, 2, 6), G(0), G(0)).linear_type ==
          std::pair<long, long>(2, 1));

    // dt is regular everywhere
    PlaneFoliationGerm reg(Series2::constant(4, G(1)), Series2(4));
    CHECK(classify_singularity(reg, G(0), G(0)).kind == SingKind::regular);
    CHECK(classify_singularity(reg, G(make_rational(1, 3)), G(-2)).kind == SingKind::regular);

    // one vanishing eigenvalue: saddle node
    PlaneFoliationGerm sn(Series2::variable(5, 0),
                          Series2::monomial(5, Index2{{2, 0}}) + Series2::monomial(5, Index2{{0, 3}}));
    CHECK(classify_singularity(sn, G(0), G(0)).kind == SingKind::saddle_node);

    // nilpotent-like zero linear part: non-reduced with no type
    PlaneFoliationGerm nil(Series2::monomial(5, Index2{{0, 2}}), Series2::monomial(5, Index2{{2, 0}}));
    auto cn = classify_singularity(nil, G(0), G(0));
    CHECK(cn.kind == SingKind::non_reduced);
    CHECK(!cn.linear_type.has_value());

    // non-diagonal dual part with ratio 1: non-reduced (1,1)
    PlaneFoliationGerm jordan(Series2::monomial(5, Index2{{1, 0}}, G(2)) +
                                  Series2::monomial(5, Index2{{0, 1}}),
                              Series2::monomial(5, Index2{{0, 1}}, G(-2)));
    auto cj = classify_singularity(jordan, G(0), G(0));
    CHECK(cj.kind == SingKind::non_reduced);
    CHECK(cj.linear_type == std::pair<long, long>(1, 1));

    // complex ratio: reduced
    PlaneFoliationGerm cplx(Series2::monomial(5, Index2{{1, 0}}),
                            Series2::monomial(5, Index2{{0, 1}}, -G::i()));
    CHECK(classify_singularity(cplx, G(0), G(0)).kind == SingKind::reduced);

    // classification at a translated point
    PlaneFoliationGerm shifted(translate(omega_mn(2, 1, 6).A, G(0), G(-1)),
                               translate(omega_mn(2, 1, 6).B, G(0), G(-1)));
    CHECK(classify_singularity(shifted, G(0), G(1)).kind == SingKind::non_reduced);
}

TEST_CASE("resolution chains follow subtractive Euclid") {
    for (auto [m, n, len] : {std::tuple<long, long, int>{1, 1, 1}, {2, 1, 2}, {3, 2, 3}, {5, 3, 4}, {7, 4, 5}}) {
        CAPTURE(m);
        CAPTURE(n);
        auto tree = resolve(omega_mn(m, n, 10), 64);
        CHECK(tree.blowup_count == len);
        CHECK(euclid_steps(m, n) + 1 == len);
        CHECK(tree.dicritical_components.size() == 1);
        CHECK(compare_trees(tree, euclid_skeleton(m, n)));
    }
    CHECK(!compare_trees(resolve(omega_mn(2, 1, 10), 64), resolve(omega_mn(3, 1, 10), 64)));
    CHECK(euclid_steps(7, 4) == 4);
    CHECK(euclid_steps(3, 2) == 2);
    CHECK(euclid_steps(1, 1) == 0);
}

TEST_CASE("resolution terminates within the predicted length for all small pairs") {
    for (long m = 1; m <= 7; ++m)
        for (long n = 1; n <= 7; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            auto tree = resolve(omega_mn(m, n, 12), 64);
            CHECK(tree.blowup_count == euclid_steps(m, n) + 1);
            CHECK(tree.dicritical_components.size() == 1);
        }
}

TEST_CASE("linear types decrease lexicographically along the chain") {
    auto tree = resolve(omega_mn(5, 3, 10), 64);
    const ResolutionNode* at = &tree.root;
    std::vector<std::pair<long, long>> types;
    while (at) {
        REQUIRE(at->center.linear_type.has_value());
        types.push_back(*at->center.linear_type);
        at = non_reduced_child(*at);
    }
    REQUIRE(types.size() == 4); // (5,3) (2,3) (2,1) (1,1)
    CHECK(types.front() == std::pair<long, long>(5, 3));
    CHECK(types.back() == std::pair<long, long>(1, 1));
    for (size_t i = 1; i < types.size(); ++i) CHECK(types[i] < types[i - 1]);
}

TEST_CASE("perturbations keep the resolution tree") {
    Rng rng(22);
    for (auto [m, n] : {std::pair<long, long>{2, 1}, {3, 2}, {1, 3}}) {
        auto base = resolve(omega_mn(m, n, 10), 64);
        for (int t = 0; t < 5; ++t) {
            PlaneFoliationGerm g = perturbed(m, n, rng.series<2>(10, 3, 3), rng.series<2>(10, 3, 3),
                                             rng.series<2>(10, 3, 3), rng.series<2>(10, 3, 3), 10);
            auto tree = resolve(g, 64);
            CHECK(compare_trees(tree, base));
            CHECK(tree.blowup_count == base.blowup_count);
            CHECK(tree.dicritical_components.size() == 1);
        }
    }
}

TEST_CASE("budget and order guards") {
    CHECK_THROWS_AS(resolve(omega_mn(7, 4, 10), 2), ResolutionBudgetError);
    try {
        resolve(omega_mn(7, 4, 10), 2);
    } catch (const ResolutionBudgetError& e) {
        CHECK(e.partial.budget_exceeded);
        CHECK(e.partial.blowup_count == 2);
    }
    // (7,4) needs order >= chain + 2 = 7
    CHECK_THROWS_AS(resolve(omega_mn(7, 4, 5), 64), PrecisionError);
    CHECK_THROWS_AS(resolve(PlaneFoliationGerm(Series2::constant(6, G(1)), Series2(6)), 64),
                    NotSingularError);
}

TEST_CASE("tree serialization is stable") {
    auto tree = resolve(omega_mn(2, 1, 10), 64);
    std::string text = tree_to_text(tree);
    CHECK(text ==
          "blowups=2 dicritical_components=1\n"
          "node kind=non_reduced type=(2,1) blown=yes dicritical=no mult=1\n"
          "  node kind=non_reduced type=(1,1) blown=yes dicritical=yes mult=2\n"
          "  node kind=reduced blown=no\n");
    CHECK(tree_to_json_string(tree) == tree_to_json_string(resolve(omega_mn(2, 1, 10), 64)));
}

TEST_CASE("family restriction") {
    // a1 = a2 = 0: m x dy - n y dx for any z0
    auto X0 = VectorFieldGerm::linear({G(3), G(2), G(-1)}, 6);
    auto f0 = family_restriction(X0, G(make_rational(2, 3)));
    CHECK(f0.A == Series2::monomial(7, Index2{{1, 0}}, G(3)));
    CHECK(f0.B == Series2::monomial(7, Index2{{0, 1}}, G(-2)));

    // a1 = z at z0 = 1/2: m x (3/2) dy - n y dx
    std::array<Series3, 3> a{Series3::variable(6, 2), Series3(6), Series3(6)};
    VectorFieldGerm X({G(1), G(1), G(-1)}, a);
    auto f1 = family_restriction(X, G(make_rational(1, 2)));
    CHECK(f1.A == Series2::monomial(7, Index2{{1, 0}}, G(make_rational(3, 2))));
    CHECK(f1.B == Series2::monomial(7, Index2{{0, 1}}, G(-1)));

    // contraction with the planar dual field vanishes by construction
    Rng rng(23);
    for (int t = 0; t < 10; ++t) {
        VectorFieldGerm Xr = rng.shaped_field(rng.pick(1, 3), rng.pick(1, 3), rng.pick(1, 3), 6, 3, 3);
        G z0 = G(rng.rational(2, 3));
        auto fam = family_restriction(Xr, z0);
        int m = fam.order();
        Series2 contraction = truncated(fam.B, m) * truncated(fam.dual_x(), m) +
                              truncated(fam.A, m) * truncated(fam.dual_y(), m);
        CHECK(contraction.is_zero());
    }

    // fields outside the (m,n,-k) shape are rejected
    CHECK_THROWS_AS(family_restriction(VectorFieldGerm::linear({G(1), G(2), G(3)}, 6), G(0)),
                    ConfigError);
}

TEST_CASE("dicritical parameter search") {
    // linear (1,1): dicritical at every candidate
    auto X = VectorFieldGerm::linear({G(1), G(1), G(-1)}, 8);
    auto all = dicritical_parameter_search(X, {G(0), G(make_rational(1, 2)), G(make_rational(-1, 4))}, 32);
    CHECK(all.hits.size() == 3);
    CHECK(all.failures.empty());

    // a1 = z: ratio (1+z0) is positive rational at real candidates > -1 but
    // leaves the rational world at complex ones
    std::array<Series3, 3> a{Series3::variable(8, 2), Series3(8), Series3(8)};
    VectorFieldGerm Xz({G(1), G(1), G(-1)}, a);
    auto found = dicritical_parameter_search(
        Xz, {G(0), G(Rational(0), Rational(1, 2)), G(Rational(1), Rational(1))}, 32);
    REQUIRE(found.hits.size() == 1);
    CHECK(found.hits[0].first == G(0));
    CHECK(found.hits[0].second.blowup_count == 1);

    // real rational perturbation values stay dicritical with longer chains
    auto longer = dicritical_parameter_search(Xz, {G(make_rational(1, 2))}, 32);
    REQUIRE(longer.hits.size() == 1);
    CHECK(longer.hits[0].second.blowup_count == 3); // ratio 3/2 resolves via (3,2)

    // candidates hitting 1/q^j in the (p/q + g(z)) shape are flagged
    // (m,n) = (2,1) with a2 = z: ratio (1 + z0)/2, dicritical iff z0 real > -1
    std::array<Series3, 3> b{Series3(8), Series3::variable(8, 2), Series3(8)};
    VectorFieldGerm Xq({G(2), G(1), G(-1)}, b);
    std::vector<G> grid{G(make_rational(1, 2)), G(make_rational(1, 4)), G(Rational(0), Rational(1)),
                        G(make_rational(-3, 2))};
    auto q_hits = dicritical_parameter_search(Xq, grid, 32);
    REQUIRE(q_hits.hits.size() == 2);
    CHECK(q_hits.hits[0].first == G(make_rational(1, 2)));  // ratio 3/4
    CHECK(q_hits.hits[1].first == G(make_rational(1, 4)));  // ratio 5/8
    CHECK(q_hits.failures.empty());

    // empty candidate list is an empty result, not an error
    CHECK(dicritical_parameter_search(X, {}, 32).hits.empty());

    // budget failures are recorded per candidate
    auto budget = dicritical_parameter_search(Xz, {G(make_rational(1, 2))}, 1);
    CHECK(budget.hits.empty());
    REQUIRE(budget.failures.size() == 1);
    CHECK(budget.failures[0].budget);
}

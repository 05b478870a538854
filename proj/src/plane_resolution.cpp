#include "holint/plane_resolution.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace holint {

namespace {

MultiIndex<2> common_monomial2(const Series2& a, const Series2& b) {
    MultiIndex<2> J;
    bool any = false;
    for (const Series2* s : {&a, &b})
        for (const auto& [I, c] : s->terms()) {
            if (!any) {
                J = I;
                any = true;
            } else {
                J[0] = std::min(J[0], I[0]);
                J[1] = std::min(J[1], I[1]);
            }
        }
    if (!any) throw DegenerateInputError("plane foliation germ is identically zero");
    return J;
}

int valuation_in(const Series2& s, int var) {
    int v = std::numeric_limits<int>::max();
    for (const auto& [I, c] : s.terms()) v = std::min(v, I[var]);
    return v;
}

bool divisible_by_var(const Series2& s, int var) {
    return s.is_zero() || valuation_in(s, var) >= 1;
}

Series2 add_aligned(const Series2& a, const Series2& b) {
    int m = std::min(a.order(), b.order());
    return truncated(a, m) + truncated(b, m);
}

// --- univariate helper over Q(i), used for the divisor restriction --------

struct UniPoly {
    std::vector<GaussianRational> c; // ascending degrees, no trailing zeros

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    int valuation() const {
        for (size_t j = 0; j < c.size(); ++j)
            if (!c[j].is_zero()) return static_cast<int>(j);
        return -1;
    }
};

UniPoly restrict_to_divisor(const Series2& s, int divisor_var) {
    UniPoly p;
    int other = 1 - divisor_var;
    for (const auto& [I, coef] : s.terms()) {
        if (I[divisor_var] != 0) continue;
        size_t e = static_cast<size_t>(I[other]);
        if (p.c.size() <= e) p.c.resize(e + 1);
        p.c[e] += coef;
    }
    p.normalize();
    return p;
}

UniPoly poly_mod(UniPoly a, const UniPoly& b) {
    GaussianRational lead = b.c.back();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        GaussianRational q = a.c.back() / lead;
        int shift = a.degree() - b.degree();
        for (int j = 0; j <= b.degree(); ++j)
            a.c[static_cast<size_t>(j + shift)] -= q * b.c[static_cast<size_t>(j)];
        a.normalize();
    }
    return a;
}

UniPoly poly_gcd(UniPoly a, UniPoly b) {
    a.normalize();
    b.normalize();
    while (!b.is_zero()) {
        UniPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        GaussianRational lead = a.c.back();
        for (auto& v : a.c) v = v / lead;
    }
    return a;
}

// Nonzero common roots of the divisor restrictions. Only exact roots from a
// residual linear factor are supported; a higher-degree residual means
// singular points at non-rational divisor coordinates, outside this engine's
// scope.
std::vector<GaussianRational> nonzero_divisor_roots(const UniPoly& alpha, const UniPoly& beta) {
    UniPoly g;
    if (alpha.is_zero() && beta.is_zero())
        throw Error("internal: divisor restriction of a saturated germ vanished");
    if (alpha.is_zero())
        g = beta;
    else if (beta.is_zero())
        g = alpha;
    else
        g = poly_gcd(alpha, beta);
    int val = g.valuation();
    UniPoly rho;
    rho.c.assign(g.c.begin() + val, g.c.end());
    if (rho.degree() == 0) return {};
    if (rho.degree() == 1) return {-(rho.c[0] / rho.c[1])};
    throw Error("singular points on the divisor at non-rational coordinates are unsupported");
}

// Primitive positive pair (p, q) with a/b = p/q if that ratio is a positive
// rational, nullopt otherwise. a, b nonzero.
std::optional<std::pair<long, long>> positive_rational_ratio(const GaussianRational& a,
                                                             const GaussianRational& b) {
    GaussianRational sigma = a / b;
    if (!sigma.is_real()) return std::nullopt;
    if (sgn(sigma.re()) <= 0) return std::nullopt;
    const Rational& r = sigma.re();
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        throw InconsistencyError("linear type does not fit a machine word");
    return std::make_pair(r.get_num().get_si(), r.get_den().get_si());
}

} // namespace

PlaneFoliationGerm::PlaneFoliationGerm(Series2 a, Series2 b, std::vector<std::string> history)
    : A(std::move(a)), B(std::move(b)), chart_history(std::move(history)) {
    if (A.order() != B.order()) throw OrderMismatchError("plane germ coefficient orders differ");
    MultiIndex<2> J = common_monomial2(A, B); // also rejects the zero germ
    if (!J.is_zero())
        throw InconsistencyError("plane foliation germ is not saturated (common factor x^" +
                                 std::to_string(J[0]) + "*y^" + std::to_string(J[1]) + ")");
}

std::string to_string(SingKind k) {
    switch (k) {
        case SingKind::regular: return "regular";
        case SingKind::reduced: return "reduced";
        case SingKind::saddle_node: return "saddle_node";
        case SingKind::non_reduced: return "non_reduced";
    }
    return "?";
}

BlowupResult blowup_once(const PlaneFoliationGerm& g) {
    if (!g.A.constant_term().is_zero() || !g.B.constant_term().is_zero())
        throw NotSingularError("blow-up requested at a regular point");
    int d = g.order();
    if (d < 2) throw PrecisionError("truncation order too low for a blow-up");

    auto make_chart = [&](bool first) -> BlowupChart {
        // first: y = x*t with coordinates (x, t); else x = u*y with (u, y).
        std::array<Series2, 2> images = first
            ? std::array<Series2, 2>{Series2::variable(d, 0),
                                     Series2::monomial(d, MultiIndex<2>{{1, 1}})}
            : std::array<Series2, 2>{Series2::monomial(d, MultiIndex<2>{{1, 1}}),
                                     Series2::variable(d, 1)};
        Series2 Ap = substitute(g.A, images);
        Series2 Bp = substitute(g.B, images);
        int divisor = first ? 0 : 1;
        Series2 dsecond(d), dfirst(d); // coefficients of d(second var), d(first var)
        if (first) {
            // pi* w = (x Ap) dt + (t Ap + Bp) dx
            dsecond = truncated(mul_monomial(Ap, MultiIndex<2>::unit(0)), d);
            dfirst = add_aligned(mul_monomial(Ap, MultiIndex<2>::unit(1)), Bp);
        } else {
            // pi* w = (Ap + u Bp) dy + (y Bp) du
            dsecond = add_aligned(Ap, mul_monomial(Bp, MultiIndex<2>::unit(0)));
            dfirst = truncated(mul_monomial(Bp, MultiIndex<2>::unit(1)), d);
        }
        if (dsecond.is_zero() && dfirst.is_zero())
            throw PrecisionError("pullback vanished within the truncation order");
        int nu = std::numeric_limits<int>::max();
        if (!dsecond.is_zero()) nu = std::min(nu, valuation_in(dsecond, divisor));
        if (!dfirst.is_zero()) nu = std::min(nu, valuation_in(dfirst, divisor));
        MultiIndex<2> J;
        J[divisor] = nu;
        Series2 A1 = divide_monomial(dsecond, J);
        Series2 B1 = divide_monomial(dfirst, J);
        if (A1.order() < 1) throw PrecisionError("truncation order exhausted by blow-up");
        // The divisor is invariant iff the form annihilates vectors tangent
        // to it, i.e. the divisor variable divides the complementary
        // coefficient (dt-coefficient in chart 1, du-coefficient in chart 2).
        bool invariant = first ? divisible_by_var(A1, divisor) : divisible_by_var(B1, divisor);
        std::vector<std::string> hist = g.chart_history;
        hist.push_back(first ? "c1" : "c2");
        return BlowupChart{PlaneFoliationGerm(std::move(A1), std::move(B1), std::move(hist)),
                           nu, invariant, divisor};
    };

    BlowupResult r{make_chart(true), make_chart(false)};
    if (r.chart1.divisor_invariant != r.chart2.divisor_invariant)
        throw Error("internal: charts disagree on divisor invariance");
    return r;
}

SingularityClass classify_singularity(const PlaneFoliationGerm& g,
                                      const GaussianRational& px, const GaussianRational& py) {
    Series2 A = g.A, B = g.B;
    if (!px.is_zero() || !py.is_zero()) {
        A = translate(A, px, py);
        B = translate(B, px, py);
    }
    SingularityClass cls;
    if (!A.constant_term().is_zero() || !B.constant_term().is_zero()) {
        cls.kind = SingKind::regular;
        return cls;
    }
    // Linear part of the dual field (A, -B).
    GaussianRational a11 = A.coeff(MultiIndex<2>{{1, 0}});
    GaussianRational a12 = A.coeff(MultiIndex<2>{{0, 1}});
    GaussianRational a21 = -B.coeff(MultiIndex<2>{{1, 0}});
    GaussianRational a22 = -B.coeff(MultiIndex<2>{{0, 1}});
    GaussianRational tr = a11 + a22;
    GaussianRational det = a11 * a22 - a12 * a21;
    if (det.is_zero()) {
        // Eigenvalues {0, tr}.
        cls.kind = tr.is_zero() ? SingKind::non_reduced : SingKind::saddle_node;
        return cls;
    }
    if (a12.is_zero() && a21.is_zero()) {
        // Diagonal dual part: eigenvalues attach to the coordinates.
        if (auto pq = positive_rational_ratio(a11, a22)) {
            cls.kind = SingKind::non_reduced;
            cls.linear_type = pq;
        } else {
            cls.kind = SingKind::reduced;
        }
        return cls;
    }
    // General case via w = r + 1/r = tr^2/det - 2: the ratio r is a positive
    // rational iff w is real rational, w >= 2 and w^2 - 4 is a square.
    GaussianRational w = tr * tr / det - GaussianRational(2);
    if (!w.is_real() || w.re() < 2) {
        cls.kind = SingKind::reduced;
        return cls;
    }
    Rational disc = w.re() * w.re() - 4;
    Rational root;
    if (!is_rational_square(disc, &root)) {
        cls.kind = SingKind::reduced;
        return cls;
    }
    Rational r = (w.re() + root) / 2; // >= 1; no eigenvector data, so the
    cls.kind = SingKind::non_reduced; // pair is stored descending
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        throw InconsistencyError("linear type does not fit a machine word");
    cls.linear_type = std::make_pair(r.get_num().get_si(), r.get_den().get_si());
    return cls;
}

namespace {

std::string canon(const ResolutionNode& n) {
    std::string s = "(" + to_string(n.center.kind);
    if (n.center.linear_type)
        s += ":" + std::to_string(n.center.linear_type->first) + "/" +
             std::to_string(n.center.linear_type->second);
    if (n.blown_up) s += n.dicritical ? "!D" : "!B";
    if (n.budget_cut) s += "!X";
    std::vector<std::string> kids;
    kids.reserve(n.children.size());
    for (const auto& c : n.children) kids.push_back(canon(c));
    std::sort(kids.begin(), kids.end());
    s += "[";
    for (const auto& k : kids) s += k;
    return s + "])";
}

void sort_children(ResolutionNode& n) {
    for (auto& c : n.children) sort_children(c);
    std::sort(n.children.begin(), n.children.end(),
              [](const ResolutionNode& a, const ResolutionNode& b) { return canon(a) < canon(b); });
}

struct Resolver {
    int budget;
    int count = 0;
    bool budget_hit = false;
    std::vector<std::string> dicritical_labels;

    ResolutionNode expand(const PlaneFoliationGerm& germ, const SingularityClass& cls) {
        ResolutionNode node;
        node.center = cls;
        node.chart = chart_label(germ);
        if (cls.kind != SingKind::non_reduced) return node;
        if (count >= budget) {
            node.budget_cut = true;
            budget_hit = true;
            return node;
        }
        ++count;
        BlowupResult br = blowup_once(germ);
        node.blown_up = true;
        node.divisor_multiplicity = br.chart1.divisor_multiplicity;
        node.dicritical = !br.chart1.divisor_invariant;
        if (node.dicritical) dicritical_labels.push_back(node.chart + ":E");

        auto visit = [&](const PlaneFoliationGerm& g, const GaussianRational& px,
                         const GaussianRational& py) {
            SingularityClass c = classify_singularity(g, px, py);
            if (c.kind == SingKind::regular) return;
            if (node.dicritical || c.kind != SingKind::non_reduced) {
                // Terminal: reduced/saddle-node points, or anything on a
                // dicritical divisor (the branch stops there).
                ResolutionNode leaf;
                leaf.center = c;
                leaf.chart = chart_label(g);
                node.children.push_back(std::move(leaf));
                return;
            }
            PlaneFoliationGerm moved = g;
            if (!px.is_zero() || !py.is_zero()) {
                moved = PlaneFoliationGerm(translate(g.A, px, py), translate(g.B, px, py),
                                           g.chart_history);
                moved.chart_history.push_back("t");
            }
            node.children.push_back(expand(moved, c));
        };

        // Chart 1 sees the whole divisor except t = infinity: its corner plus
        // nonzero rational divisor roots. Chart 2 contributes its corner.
        const PlaneFoliationGerm& g1 = br.chart1.germ;
        visit(g1, GaussianRational(0), GaussianRational(0));
        UniPoly alpha = restrict_to_divisor(g1.A, br.chart1.divisor_var);
        UniPoly beta = restrict_to_divisor(g1.B, br.chart1.divisor_var);
        for (const auto& c : nonzero_divisor_roots(alpha, beta))
            visit(g1, GaussianRational(0), c);
        visit(br.chart2.germ, GaussianRational(0), GaussianRational(0));
        return node;
    }

    static std::string chart_label(const PlaneFoliationGerm& g) {
        std::string s;
        for (const auto& part : g.chart_history) {
            if (!s.empty()) s += "/";
            s += part;
        }
        return s.empty() ? "origin" : s;
    }
};

} // namespace

ResolutionTree resolve(const PlaneFoliationGerm& g, int max_blowups) {
    SingularityClass root_cls = classify_singularity(g, GaussianRational(0), GaussianRational(0));
    if (root_cls.kind == SingKind::regular)
        throw NotSingularError("resolve requires a singular origin");
    if (root_cls.kind == SingKind::non_reduced && root_cls.linear_type) {
        int chain = euclid_steps(root_cls.linear_type->first, root_cls.linear_type->second) + 1;
        if (g.order() < chain + 2)
            throw PrecisionError("truncation order " + std::to_string(g.order()) +
                                 " below resolution budget " + std::to_string(chain + 2));
    }
    Resolver rs{max_blowups, 0, false, {}};
    ResolutionTree tree;
    tree.root = rs.expand(g, root_cls);
    sort_children(tree.root);
    tree.blowup_count = rs.count;
    tree.dicritical_components = std::move(rs.dicritical_labels);
    tree.budget_exceeded = rs.budget_hit;
    if (tree.budget_exceeded) throw ResolutionBudgetError(std::move(tree));
    return tree;
}

int euclid_steps(long m, long n) {
    if (m < 1 || n < 1) throw DegenerateInputError("euclid pair must be positive");
    long g = std::gcd(m, n);
    m /= g;
    n /= g;
    int steps = 0;
    while (m != n) {
        if (m > n)
            m -= n;
        else
            n -= m;
        ++steps;
    }
    return steps;
}

ResolutionTree euclid_skeleton(long m, long n) {
    if (m < 1 || n < 1) throw DegenerateInputError("euclid pair must be positive");
    long g = std::gcd(m, n);
    m /= g;
    n /= g;
    ResolutionTree tree;
    tree.blowup_count = euclid_steps(m, n) + 1;
    tree.dicritical_components = {"skeleton:E"};

    ResolutionNode* at = &tree.root;
    while (true) {
        at->center.kind = SingKind::non_reduced;
        at->center.linear_type = std::make_pair(m, n);
        at->blown_up = true;
        at->chart = "skeleton";
        if (m == n) {
            at->dicritical = true;
            break;
        }
        ResolutionNode leaf;
        leaf.center.kind = SingKind::reduced;
        leaf.chart = "skeleton";
        at->children.push_back(std::move(leaf));
        at->children.emplace_back();
        ResolutionNode* next = &at->children.back();
        if (m > n)
            m -= n;
        else
            n -= m;
        at = next;
    }
    sort_children(tree.root);
    return tree;
}

bool compare_trees(const ResolutionTree& a, const ResolutionTree& b) {
    return canon(a.root) == canon(b.root);
}

namespace {

void node_text(const ResolutionNode& n, int depth, std::ostringstream& out) {
    out << std::string(static_cast<size_t>(depth) * 2, ' ');
    out << "node kind=" << to_string(n.center.kind);
    if (n.center.linear_type)
        out << " type=(" << n.center.linear_type->first << "," << n.center.linear_type->second << ")";
    out << " blown=" << (n.blown_up ? "yes" : "no");
    if (n.blown_up)
        out << " dicritical=" << (n.dicritical ? "yes" : "no") << " mult=" << n.divisor_multiplicity;
    if (n.budget_cut) out << " budget_cut=yes";
    out << "\n";
    for (const auto& c : n.children) node_text(c, depth + 1, out);
}

void node_json(const ResolutionNode& n, std::ostringstream& out) {
    out << "{\"kind\":\"" << to_string(n.center.kind) << "\"";
    if (n.center.linear_type)
        out << ",\"linear_type\":[" << n.center.linear_type->first << ","
            << n.center.linear_type->second << "]";
    out << ",\"blown_up\":" << (n.blown_up ? "true" : "false");
    if (n.blown_up) {
        out << ",\"dicritical\":" << (n.dicritical ? "true" : "false");
        out << ",\"divisor_multiplicity\":" << n.divisor_multiplicity;
    }
    if (n.budget_cut) out << ",\"budget_cut\":true";
    out << ",\"children\":[";
    for (size_t i = 0; i < n.children.size(); ++i) {
        if (i) out << ",";
        node_json(n.children[i], out);
    }
    out << "]}";
}

} // namespace

std::string tree_to_text(const ResolutionTree& t) {
    std::ostringstream out;
    out << "blowups=" << t.blowup_count << " dicritical_components=" << t.dicritical_components.size();
    if (t.budget_exceeded) out << " budget_exceeded=yes";
    out << "\n";
    node_text(t.root, 0, out);
    return out.str();
}

std::string tree_to_json_string(const ResolutionTree& t) {
    std::ostringstream out;
    out << "{\"blowup_count\":" << t.blowup_count << ",\"dicritical_components\":"
        << t.dicritical_components.size() << ",\"budget_exceeded\":"
        << (t.budget_exceeded ? "true" : "false") << ",\"root\":";
    node_json(t.root, out);
    out << "}";
    return out.str();
}

PlaneFoliationGerm family_restriction(const VectorFieldGerm& X, const GaussianRational& z0) {
    const auto& lam = X.lambda();
    auto positive_int = [](const GaussianRational& v) {
        return v.is_real() && v.re().get_den() == 1 && sgn(v.re()) > 0;
    };
    if (!positive_int(lam[0]) || !positive_int(lam[1]) || !positive_int(-lam[2]))
        throw ConfigError("family restriction needs a field in the (m,n,-k) shape");
    int d = X.order();
    Series2 P = restrict_last(X.a(0), z0);
    Series2 Q = restrict_last(X.a(1), z0);
    Series2 one = Series2::constant(d, GaussianRational(1));
    Series2 A = mul_monomial(one + P, MultiIndex<2>::unit(0), lam[0]);
    Series2 B = mul_monomial(one + Q, MultiIndex<2>::unit(1), -lam[1]);
    return PlaneFoliationGerm(std::move(A), std::move(B), {"z0=" + z0.str()});
}

DicriticalSearchResult dicritical_parameter_search(const VectorFieldGerm& X,
                                                   const std::vector<GaussianRational>& candidates,
                                                   int max_blowups) {
    DicriticalSearchResult out;
    for (const auto& z0 : candidates) {
        try {
            ResolutionTree tree = resolve(family_restriction(X, z0), max_blowups);
            if (!tree.dicritical_components.empty()) out.hits.emplace_back(z0, std::move(tree));
        } catch (const ResolutionBudgetError& e) {
            out.failures.push_back({z0, e.what(), true});
        } catch (const Error& e) {
            out.failures.push_back({z0, e.what(), false});
        }
    }
    return out;
}

} // namespace holint

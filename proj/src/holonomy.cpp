#include "holint/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace holint {

NumericPoly NumericPoly::from_series(const Series3& s) {
    NumericPoly p;
    p.terms.reserve(s.terms().size());
    for (const auto& [I, c] : s.terms()) {
        p.terms.push_back({I[0], I[1], I[2], c.to_complex()});
        p.max_deg = std::max({p.max_deg, I[0], I[1], I[2]});
    }
    return p;
}

Complex NumericPoly::eval(Complex x, Complex y, Complex z) const {
    if (terms.empty()) return {0.0, 0.0};
    // Power tables beat per-term pow() at these degrees.
    thread_local std::vector<Complex> px, py, pz;
    auto fill = [&](std::vector<Complex>& pw, Complex v) {
        pw.assign(static_cast<size_t>(max_deg) + 1, Complex(1.0, 0.0));
        for (int e = 1; e <= max_deg; ++e) pw[static_cast<size_t>(e)] = pw[static_cast<size_t>(e - 1)] * v;
    };
    fill(px, x);
    fill(py, y);
    fill(pz, z);
    Complex acc{0.0, 0.0};
    for (const auto& t : terms)
        acc += t.c * px[static_cast<size_t>(t.i)] * py[static_cast<size_t>(t.j)] * pz[static_cast<size_t>(t.l)];
    return acc;
}

NumericGerm NumericGerm::from_field(const VectorFieldGerm& X, double radius) {
    const auto& lam = X.lambda();
    auto positive_int = [](const GaussianRational& v) {
        return v.is_real() && v.re().get_den() == 1 && sgn(v.re()) > 0;
    };
    if (!positive_int(lam[0]) || !positive_int(lam[1]) || !positive_int(-lam[2]))
        throw ConfigError("numeric germ needs a field in the (m,n,-k) shape");
    NumericGerm g;
    g.m = to_double(lam[0].re());
    g.n = to_double(lam[1].re());
    g.k = to_double(-lam[2].re());
    g.a1 = NumericPoly::from_series(X.a(0));
    g.a2 = NumericPoly::from_series(X.a(1));
    g.a3 = NumericPoly::from_series(X.a(2));
    g.radius = radius;
    return g;
}

NumericGerm NumericGerm::diagnostic_linear(double m, double n, double k, double radius) {
    NumericGerm g;
    g.m = m;
    g.n = n;
    g.k = k;
    g.radius = radius;
    return g;
}

namespace {

struct Derivs {
    Complex dx, dy;
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One RK4 pass with N steps; throws DomainEscapeError when a stage point
// leaves the polydisk.
SectionPoint integrate(const NumericGerm& g, const SectionPoint& start, Complex z0, double theta_end,
                       int N) {
    const Complex I(0.0, 1.0);
    const Complex cm = -I * (g.m / g.k);
    const Complex cn = -I * (g.n / g.k);
    auto f = [&](double theta, Complex x, Complex y) -> Derivs {
        if (std::abs(x) > g.radius || std::abs(y) > g.radius)
            throw DomainEscapeError("lift left the polydisk");
        Complex z = z0 * std::exp(I * theta);
        Complex den = 1.0 + g.a3.eval(x, y, z);
        if (std::abs(den) < 1e-6) throw DomainEscapeError("unit factor 1+a3 degenerated");
        return {cm * x * (1.0 + g.a1.eval(x, y, z)) / den,
                cn * y * (1.0 + g.a2.eval(x, y, z)) / den};
    };
    double h = theta_end / N;
    Complex x = start.first, y = start.second;
    double theta = 0.0;
    for (int s = 0; s < N; ++s) {
        Derivs k1 = f(theta, x, y);
        Derivs k2 = f(theta + h / 2, x + h / 2 * k1.dx, y + h / 2 * k1.dy);
        Derivs k3 = f(theta + h / 2, x + h / 2 * k2.dx, y + h / 2 * k2.dy);
        Derivs k4 = f(theta + h, x + h * k3.dx, y + h * k3.dy);
        x += h / 6 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
        y += h / 6 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
        theta += h;
    }
    return {x, y};
}

double dist(const SectionPoint& a, const SectionPoint& b) {
    return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

// Relative nearness that stays meaningful close to the fixed point.
double rel_dist(const SectionPoint& a, const SectionPoint& ref) {
    double scale = std::max({1e-3, std::abs(ref.first), std::abs(ref.second)});
    return dist(a, ref) / scale;
}

} // namespace

LiftResult lift_loop(const NumericGerm& X, const SectionPoint& start, const LoopSpec& loop, double tol) {
    if (loop.steps < 64) throw ConfigError("loop needs at least 64 steps per turn");
    if (std::abs(loop.z0) == 0.0 || std::abs(loop.z0) > X.radius)
        throw ConfigError("loop base point outside the polydisk or at the origin");
    if (std::abs(start.first) > X.radius || std::abs(start.second) > X.radius)
        throw DomainEscapeError("start point outside the polydisk");
    if (loop.turns == 0) return {start, 0.0};
    double theta_end = kTwoPi * loop.turns;
    int N = loop.steps * std::abs(loop.turns);
    SectionPoint coarse = integrate(X, start, loop.z0, theta_end, N);
    constexpr int kMaxDoublings = 8;
    for (int round = 0;; ++round) {
        SectionPoint fine = integrate(X, start, loop.z0, theta_end, 2 * N);
        double err = dist(coarse, fine) * (16.0 / 15.0);
        if (err <= tol || round == kMaxDoublings) {
            if (err > tol)
                throw PrecisionError("lift error bound stayed above tolerance after refinement");
            return {fine, err};
        }
        N *= 2;
        coarse = fine;
    }
}

HolonomyEstimate holonomy_map(const NumericGerm& X, Complex z0, const std::vector<SectionPoint>& grid,
                              int steps, double tol) {
    HolonomyEstimate h;
    h.field = X;
    h.base = LoopSpec{z0, 1, steps};
    for (const auto& p : grid) {
        LiftResult r = lift_loop(X, p, h.base, tol);
        h.samples.push_back({p, r.end});
        h.error_bound = std::max(h.error_bound, r.error_bound);
    }
    return h;
}

std::string to_string(OrbitKind k) {
    switch (k) {
        case OrbitKind::periodic: return "periodic";
        case OrbitKind::finite_within_budget: return "finite_within_budget";
        case OrbitKind::escaped: return "escaped";
        case OrbitKind::undecided: return "undecided";
    }
    return "?";
}

OrbitVerdict periodicity_test(const HolonomyEstimate& h, int max_period, double tol) {
    if (h.samples.empty()) throw ConfigError("periodicity test needs samples");
    OrbitVerdict v;
    double lift_tol = std::min(tol / 10.0, kDefaultLiftTolerance);
    std::vector<SectionPoint> current;
    current.reserve(h.samples.size());
    for (const auto& s : h.samples) current.push_back(s.in);
    for (int p = 1; p <= max_period; ++p) {
        double worst = 0.0;
        try {
            for (size_t i = 0; i < current.size(); ++i) {
                current[i] = lift_loop(h.field, current[i], h.base, lift_tol).end;
                worst = std::max(worst, rel_dist(current[i], h.samples[i].in));
            }
        } catch (const DomainEscapeError&) {
            v.kind = OrbitKind::escaped;
            return v;
        }
        v.evidence.push_back(worst);
        // A period claim needs enough independent witnesses (one sample can
        // alias a rotation).
        if (worst <= tol && h.samples.size() >= 8) {
            v.kind = OrbitKind::periodic;
            v.period = p;
            return v;
        }
    }
    v.kind = OrbitKind::undecided;
    return v;
}

OrbitVerdict orbit_finiteness(const HolonomyEstimate& h, const SectionPoint& point, int max_iter,
                              double tol) {
    OrbitVerdict v;
    double lift_tol = std::min(tol / 10.0, kDefaultLiftTolerance);
    std::vector<SectionPoint> trace{point};
    for (int dir : {1, -1}) {
        LoopSpec loop = h.base;
        loop.turns = dir * std::abs(h.base.turns == 0 ? 1 : h.base.turns);
        SectionPoint cur = point;
        for (int it = 0; it < max_iter; ++it) {
            try {
                cur = lift_loop(h.field, cur, loop, lift_tol).end;
            } catch (const DomainEscapeError&) {
                v.kind = OrbitKind::escaped;
                return v;
            }
            double best = 1e300;
            for (const auto& prev : trace) best = std::min(best, rel_dist(cur, prev));
            v.evidence.push_back(best);
            if (best <= tol) {
                v.kind = OrbitKind::finite_within_budget;
                return v;
            }
            trace.push_back(cur);
        }
    }
    v.kind = OrbitKind::undecided;
    return v;
}

LinearHolonomy linear_holonomy_oracle(long m, long n, long k) {
    if (m < 1 || n < 1 || k < 1) throw DegenerateInputError("oracle needs positive integers");
    LinearHolonomy res;
    res.angle_x = make_rational(-m, k);
    res.angle_y = make_rational(-n, k);
    long px = k / std::gcd(k, m);
    long py = k / std::gcd(k, n);
    res.period = std::lcm(px, py);
    return res;
}

std::vector<SectionPoint> default_sample_grid(double scale) {
    std::vector<SectionPoint> grid;
    const Complex I(0.0, 1.0);
    for (int j = 0; j < 8; ++j) {
        double a = kTwoPi * j / 8.0;
        grid.emplace_back(0.08 * scale * std::exp(I * a), 0.05 * scale * std::exp(I * (a + 0.7)));
        grid.emplace_back(0.04 * scale * std::exp(I * (a + 0.3)), 0.09 * scale * std::exp(I * (3.0 * a)));
    }
    return grid;
}

} // namespace holint

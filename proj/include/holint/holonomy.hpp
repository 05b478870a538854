#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "holint/rational.hpp"
#include "holint/vector_field.hpp"

namespace holint {

using Complex = std::complex<double>;
using SectionPoint = std::pair<Complex, Complex>; // (x, y) on a transversal z = const

// Sparse polynomial with float coefficients, converted once from the exact
// series for the integrator's inner loop.
struct NumericPoly {
    struct Term {
        int i, j, l;
        Complex c;
    };
    std::vector<Term> terms;
    int max_deg = 0;

    static NumericPoly from_series(const Series3& s);
    Complex eval(Complex x, Complex y, Complex z) const;
};

// Float-compiled field in the (m, n, -k) shape. The exponents are doubles so
// diagnostic linear fields with irrational ratios can be driven through the
// same integrator.
struct NumericGerm {
    double m = 1, n = 1, k = 1;
    NumericPoly a1, a2, a3;
    double radius = 0.5; // trusted polydisk

    static NumericGerm from_field(const VectorFieldGerm& X, double radius = 0.5);
    static NumericGerm diagnostic_linear(double m, double n, double k, double radius = 0.5);
};

struct LoopSpec {
    Complex z0{0.25, 0.0};
    int turns = 1;
    int steps = 512; // RK4 subdivisions per turn, at least 64
};

struct LiftResult {
    SectionPoint end;
    double error_bound = 0.0; // Richardson estimate from one step halving
};

inline constexpr double kDefaultLiftTolerance = 1e-8;

// Integrates dx/dt = -(i m/k) x (1+a1)/(1+a3), dy/dt = -(i n/k) y (1+a2)/(1+a3)
// along z = z0 e^{it}, t in [0, 2 pi turns], refining by step doubling until
// the halving estimate drops below tol.
LiftResult lift_loop(const NumericGerm& X, const SectionPoint& start, const LoopSpec& loop,
                     double tol = kDefaultLiftTolerance);

struct HolonomySample {
    SectionPoint in, out;
};

// Sampled germ of the holonomy generator on the section z = z0. Keeps the
// compiled field so verdict routines can re-lift instead of composing floats.
struct HolonomyEstimate {
    NumericGerm field;
    LoopSpec base;
    std::vector<HolonomySample> samples;
    double error_bound = 0.0;
};

HolonomyEstimate holonomy_map(const NumericGerm& X, Complex z0, const std::vector<SectionPoint>& grid,
                              int steps = 512, double tol = kDefaultLiftTolerance);

enum class OrbitKind { periodic, finite_within_budget, escaped, undecided };

std::string to_string(OrbitKind k);

struct OrbitVerdict {
    OrbitKind kind = OrbitKind::undecided;
    int period = 0;                // for periodic
    std::vector<double> evidence;  // per-iterate deviation trace
};

// Smallest p <= max_period with h^p == id on every sample (relative metric
// max(|dx|,|dy|)/max(1e-3,|x|,|y|)), re-lifting per iterate. Declared only
// when at least 8 samples validate the candidate.
OrbitVerdict periodicity_test(const HolonomyEstimate& h, int max_period, double tol);

// Forward/backward iterate trace from one point with near-return detection.
OrbitVerdict orbit_finiteness(const HolonomyEstimate& h, const SectionPoint& point, int max_iter,
                              double tol);

// Closed-form holonomy of the linear (m,n,-k) field: rotation angles as
// exact fractions of a full turn, and the exact period.
struct LinearHolonomy {
    Rational angle_x, angle_y; // -m/k, -n/k
    long period = 0;           // lcm(k/gcd(k,m), k/gcd(k,n))
};

LinearHolonomy linear_holonomy_oracle(long m, long n, long k);

// Deterministic 16-point grid on the section, scaled into the polydisk.
std::vector<SectionPoint> default_sample_grid(double scale = 1.0);

} // namespace holint

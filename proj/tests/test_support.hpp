#pragma once

#include <array>

#include "holint/resonance.hpp"
#include "holint/series.hpp"
#include "holint/vector_field.hpp"

namespace holint::testing {

// Deterministic xorshift64 so every property test is reproducible.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state(seed) {}

    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }

    long pick(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Rational rational(long max_abs = 5, long max_den = 4, bool nonzero = false) {
        while (true) {
            Rational q = make_rational(pick(-max_abs, max_abs), pick(1, max_den));
            if (!nonzero || sgn(q) != 0) return q;
        }
    }

    GaussianRational gaussian(bool nonzero = false, bool allow_complex = true) {
        while (true) {
            GaussianRational g(rational(), (allow_complex && pick(0, 2) == 0) ? rational() : Rational(0));
            if (!nonzero || !g.is_zero()) return g;
        }
    }

    template <int N>
    MultiIndex<N> index(int max_total) {
        while (true) {
            MultiIndex<N> I;
            for (int v = 0; v < N; ++v) I[v] = static_cast<int>(pick(0, max_total));
            if (I.order() <= max_total) return I;
        }
    }

    // Random sparse series with `terms` nonzero coefficients of total degree
    // <= max_deg (and >= 1 when in_ideal).
    template <int N>
    TruncatedSeries<N> series(int order, int max_deg, int terms, bool in_ideal = false,
                              bool allow_complex = true) {
        TruncatedSeries<N> s(order);
        int placed = 0, attempts = 0;
        while (placed < terms && attempts < terms * 30) {
            ++attempts;
            MultiIndex<N> I = index<N>(max_deg);
            if (in_ideal && I.order() == 0) continue;
            if (!s.coeff(I).is_zero()) continue;
            GaussianRational c = gaussian(true, allow_complex);
            s.add_term(I, c);
            ++placed;
        }
        return s;
    }

    VectorFieldGerm field(int order, int max_deg, int terms_per_component, bool allow_complex = false) {
        std::array<GaussianRational, 3> lambda{gaussian(true, allow_complex), gaussian(true, allow_complex),
                                               gaussian(true, allow_complex)};
        std::array<Series3, 3> a{series<3>(order, max_deg, terms_per_component, true, allow_complex),
                                 series<3>(order, max_deg, terms_per_component, true, allow_complex),
                                 series<3>(order, max_deg, terms_per_component, true, allow_complex)};
        return VectorFieldGerm(std::move(lambda), std::move(a));
    }

    // Field with eigenvalues exactly (m, n, -k), random a_j.
    VectorFieldGerm shaped_field(long m, long n, long k, int order, int max_deg, int terms,
                                 bool allow_complex = true) {
        std::array<Series3, 3> a{series<3>(order, max_deg, terms, true, allow_complex),
                                 series<3>(order, max_deg, terms, true, allow_complex),
                                 series<3>(order, max_deg, terms, true, allow_complex)};
        return VectorFieldGerm({GaussianRational(m), GaussianRational(n), GaussianRational(-k)},
                               std::move(a));
    }
};

} // namespace holint::testing

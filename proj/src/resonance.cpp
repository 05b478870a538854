#include "holint/resonance.hpp"

#include <algorithm>
#include <numeric>

namespace holint {

namespace {

// Real cross product of two eigenvalues viewed as points of R^2.
Rational cross2(const GaussianRational& a, const GaussianRational& b) {
    return a.re() * b.im() - a.im() * b.re();
}

Rational dot2(const GaussianRational& a, const GaussianRational& b) {
    return a.re() * b.re() + a.im() * b.im();
}

GaussianRational dot_index(const EigenvalueTriple& lambda, const MultiIndex<3>& N) {
    GaussianRational acc;
    for (int j = 0; j < 3; ++j) acc += GaussianRational(N[j]) * lambda[static_cast<size_t>(j)];
    return acc;
}

long gcd3(long a, long b, long c) {
    return std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c));
}

// Builds the canonical (+,+,-) direction from an integer triple proportional
// to the eigenvalues. The triple must have exactly one entry of minority
// sign after a global flip; otherwise nullopt.
std::optional<IntegerDirection> canonicalize_direction(std::array<long, 3> t, const EigenvalueTriple& lambda) {
    long g = gcd3(t[0], t[1], t[2]);
    if (g == 0) return std::nullopt;
    for (long& v : t) v /= g;
    int neg = 0;
    for (long v : t) {
        if (v == 0) return std::nullopt;
        if (v < 0) ++neg;
    }
    if (neg == 0 || neg == 3) return std::nullopt;
    if (neg == 2)
        for (long& v : t) v = -v;
    // Slot the unique negative entry third, keeping the positives in order.
    std::array<int, 3> perm{};
    int pos = 0;
    for (int j = 0; j < 3; ++j)
        if (t[static_cast<size_t>(j)] > 0) perm[static_cast<size_t>(pos++)] = j;
    for (int j = 0; j < 3; ++j)
        if (t[static_cast<size_t>(j)] < 0) perm[2] = j;
    IntegerDirection dir;
    dir.m = t[static_cast<size_t>(perm[0])];
    dir.n = t[static_cast<size_t>(perm[1])];
    dir.k = -t[static_cast<size_t>(perm[2])];
    dir.permutation = perm;
    dir.unit = lambda[static_cast<size_t>(perm[0])] / GaussianRational(dir.m);
    // Exactness of the factorization lambda = unit * (m, n, -k).
    auto st = dir.signed_triple();
    for (int i = 0; i < 3; ++i)
        if (lambda[static_cast<size_t>(dir.permutation[static_cast<size_t>(i)])] !=
            dir.unit * st[static_cast<size_t>(i)])
            return std::nullopt;
    return dir;
}

} // namespace

StarReport check_star(const EigenvalueTriple& lambda) {
    for (const auto& l : lambda)
        if (l.is_zero()) throw DegenerateInputError("zero eigenvalue in condition-star test");
    StarReport rep;
    const GaussianRational& u = lambda[0];
    if (!is_zero(cross2(u, lambda[1])) || !is_zero(cross2(u, lambda[2]))) return rep;
    int positive = 0;
    std::array<int, 3> side{};
    for (int j = 0; j < 3; ++j) {
        side[static_cast<size_t>(j)] = sgn(dot2(lambda[static_cast<size_t>(j)], u));
        if (side[static_cast<size_t>(j)] > 0) ++positive;
    }
    if (positive != 1 && positive != 2) return rep;
    int minority = (positive == 1) ? 1 : -1;
    rep.holds = true;
    for (int j = 0; j < 3; ++j)
        if (side[static_cast<size_t>(j)] == minority) rep.distinguished_index = j;
    rep.distinguished_value = lambda[static_cast<size_t>(rep.distinguished_index)];
    // Primitive integer representative of the line direction, first nonzero
    // component positive.
    mpz_class lcm_den;
    mpz_lcm(lcm_den.get_mpz_t(), u.re().get_den().get_mpz_t(), u.im().get_den().get_mpz_t());
    mpz_class a = u.re().get_num() * (lcm_den / u.re().get_den());
    mpz_class b = u.im().get_num() * (lcm_den / u.im().get_den());
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= g;
    b /= g;
    if (sgn(a) < 0 || (sgn(a) == 0 && sgn(b) < 0)) {
        a = -a;
        b = -b;
    }
    rep.line_direction = {Rational(a), Rational(b)};
    return rep;
}

std::vector<MultiIndex<3>> enumerate_resonances(const EigenvalueTriple& lambda, int degree_bound) {
    std::vector<MultiIndex<3>> out;
    for (int d = 2; d <= degree_bound; ++d)
        for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j) {
                MultiIndex<3> N{{i, j, d - i - j}};
                if (N.on_axes()) continue;
                if (dot_index(lambda, N).is_zero()) out.push_back(N);
            }
    std::sort(out.begin(), out.end());
    return out;
}

IntegerDirection preparation_direction(const MultiIndex<3>& N, const MultiIndex<3>& M,
                                       const EigenvalueTriple& lambda) {
    // Cross product in the slot arrangement of the preparation lemma.
    std::array<long, 3> t{static_cast<long>(N[1]) * M[2] - static_cast<long>(N[2]) * M[1],
                          static_cast<long>(N[2]) * M[0] - static_cast<long>(N[0]) * M[2],
                          static_cast<long>(N[0]) * M[1] - static_cast<long>(N[1]) * M[0]};
    if (t[0] == 0 && t[1] == 0 && t[2] == 0)
        throw RankError("exponents are linearly dependent");
    if (!dot_index(lambda, N).is_zero() || !dot_index(lambda, M).is_zero())
        throw InconsistencyError("exponent is not resonant for the eigenvalues");
    auto dir = canonicalize_direction(t, lambda);
    if (!dir)
        throw InconsistencyError("cross product does not factor the eigenvalues as unit * (+,+,-)");
    return *dir;
}

std::optional<IntegerDirection> first_jet_test(const EigenvalueTriple& lambda) {
    for (const auto& l : lambda)
        if (l.is_zero()) return std::nullopt;
    // Ratios lambda_j / lambda_0 must be real rationals.
    std::array<Rational, 3> ratio;
    ratio[0] = 1;
    Rational n0 = lambda[0].norm();
    for (int j = 1; j < 3; ++j) {
        GaussianRational q = lambda[static_cast<size_t>(j)] * lambda[0].conj();
        if (!is_zero(q.im())) return std::nullopt;
        ratio[static_cast<size_t>(j)] = q.re() / n0;
    }
    mpz_class den_lcm = ratio[0].get_den();
    for (int j = 1; j < 3; ++j)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), ratio[static_cast<size_t>(j)].get_den().get_mpz_t());
    std::array<long, 3> t{};
    for (int j = 0; j < 3; ++j) {
        mpz_class v = ratio[static_cast<size_t>(j)].get_num() *
                      (den_lcm / ratio[static_cast<size_t>(j)].get_den());
        if (!v.fits_slong_p()) return std::nullopt;
        t[static_cast<size_t>(j)] = v.get_si();
    }
    return canonicalize_direction(t, lambda);
}

ExponentPair monomial_first_integral(const IntegerDirection& dir) {
    // Solutions of m*i1 + n*i2 - k*i3 = 0 in the direction's coordinates.
    MultiIndex<3> Nn, Mn;
    Nn[0] = static_cast<int>(dir.k);
    Nn[1] = 0;
    Nn[2] = static_cast<int>(dir.m);
    Mn[0] = 0;
    Mn[1] = static_cast<int>(dir.k);
    Mn[2] = static_cast<int>(dir.n);
    ExponentPair F;
    for (int i = 0; i < 3; ++i) {
        F.N[dir.permutation[static_cast<size_t>(i)]] = Nn[i];
        F.M[dir.permutation[static_cast<size_t>(i)]] = Mn[i];
    }
    return F;
}

bool check_transversal(const MultiIndex<3>& N, const MultiIndex<3>& M) {
    if (N.on_axes() || M.on_axes())
        throw DegenerateInputError("exponent lies on the coordinate axes");
    int ord = N.order() + M.order();
    Series3 f = Series3::monomial(ord, N);
    Series3 g = Series3::monomial(ord, M);
    TwoForm3 w = wedge(d_of_function(f), d_of_function(g));
    if (w.is_zero()) return false;
    return !saturate(w).reduced.is_zero();
}

FirstIntegralCheck verify_first_integral(const VectorFieldGerm& X, const Series3& f1, const Series3& f2) {
    FirstIntegralCheck out{contract(X, d_of_function(f1)), contract(X, d_of_function(f2)), false};
    TwoForm3 w = wedge(d_of_function(f1), d_of_function(f2));
    if (w.is_zero()) return out;
    TwoForm3 red = saturate(w).reduced;
    int nonzero = 0, units = 0;
    for (const Series3* c : {&red.c12, &red.c13, &red.c23}) {
        if (c->is_zero()) continue;
        ++nonzero;
        if (!c->constant_term().is_zero()) ++units;
    }
    // Monomial-sense codimension >= 2: two independent vanishing loci, or an
    // empty one.
    out.transversal = nonzero >= 2 || units >= 1;
    return out;
}

MeromorphicInvariant meromorphic_invariant(const MultiIndex<3>& P, const MultiIndex<3>& Q,
                                           const IntegerDirection& dir) {
    // Work in the direction's coordinates.
    std::array<long, 3> Pn{}, Qn{};
    for (int i = 0; i < 3; ++i) {
        Pn[static_cast<size_t>(i)] = P[dir.permutation[static_cast<size_t>(i)]];
        Qn[static_cast<size_t>(i)] = Q[dir.permutation[static_cast<size_t>(i)]];
    }
    long p3 = Pn[2], q3 = Qn[2];
    if (p3 == 0 && q3 == 0)
        throw DegenerateInputError("both exponents avoid the distinguished axis");
    auto resonant = [&](const std::array<long, 3>& E) {
        return dir.m * E[0] + dir.n * E[1] - dir.k * E[2] == 0;
    };
    if (!resonant(Pn) || !resonant(Qn))
        throw InconsistencyError("exponent is not resonant for the direction");
    std::array<long, 3> En{q3 * Pn[0] - p3 * Qn[0], q3 * Pn[1] - p3 * Qn[1], 0};
    if (En[0] == 0 && En[1] == 0)
        throw RankError("exponents are linearly dependent");
    MeromorphicInvariant inv;
    inv.adapted = En[0] * En[1] < 0;
    for (int i = 0; i < 3; ++i) {
        long v = En[static_cast<size_t>(i)];
        int slot = dir.permutation[static_cast<size_t>(i)];
        inv.exponent[static_cast<size_t>(slot)] = v;
        inv.numerator[slot] = static_cast<int>(std::max(v, 0L));
        inv.denominator[slot] = static_cast<int>(std::max(-v, 0L));
    }
    return inv;
}

VectorFieldGerm to_normal_shape(const VectorFieldGerm& X, const IntegerDirection& dir) {
    auto st = dir.signed_triple();
    std::array<GaussianRational, 3> lam;
    std::array<Series3, 3> a{Series3(X.order()), Series3(X.order()), Series3(X.order())};
    for (int i = 0; i < 3; ++i) {
        int slot = dir.permutation[static_cast<size_t>(i)];
        if (X.lambda()[static_cast<size_t>(slot)] != dir.unit * st[static_cast<size_t>(i)])
            throw InconsistencyError("direction does not factor the field's eigenvalues");
        lam[static_cast<size_t>(i)] = st[static_cast<size_t>(i)];
        a[static_cast<size_t>(i)] = permute_vars(X.a(slot), dir.permutation);
    }
    return VectorFieldGerm(std::move(lam), std::move(a));
}

} // namespace holint

#include "holint/series.hpp"

#include <vector>

namespace holint {

TruncatedSeries<2> restrict_last(const TruncatedSeries<3>& f, const GaussianRational& z0) {
    TruncatedSeries<2> r(f.order());
    // Powers of z0 up to the largest z-exponent present.
    int zmax = 0;
    for (const auto& [I, c] : f.terms()) zmax = std::max(zmax, I[2]);
    std::vector<GaussianRational> zpow(static_cast<size_t>(zmax) + 1, GaussianRational(1));
    for (int k = 1; k <= zmax; ++k) zpow[static_cast<size_t>(k)] = zpow[static_cast<size_t>(k - 1)] * z0;
    for (const auto& [I, c] : f.terms())
        r.add_term(Index2{{I[0], I[1]}}, c * zpow[static_cast<size_t>(I[2])]);
    return r;
}

namespace {

GaussianRational binomial(int n, int k) {
    Rational r(1);
    for (int j = 1; j <= k; ++j) r *= Rational(n - k + j, j);
    r.canonicalize();
    return GaussianRational(r);
}

} // namespace

TruncatedSeries<2> translate(const TruncatedSeries<2>& f, const GaussianRational& p1, const GaussianRational& p2) {
    TruncatedSeries<2> r(f.order());
    std::vector<GaussianRational> pow1{GaussianRational(1)}, pow2{GaussianRational(1)};
    auto power = [](std::vector<GaussianRational>& pows, const GaussianRational& base, int e) {
        while (static_cast<int>(pows.size()) <= e) pows.push_back(pows.back() * base);
        return pows[static_cast<size_t>(e)];
    };
    for (const auto& [I, c] : f.terms()) {
        for (int a = 0; a <= I[0]; ++a)
            for (int b = 0; b <= I[1]; ++b) {
                GaussianRational coef = c * binomial(I[0], a) * binomial(I[1], b) *
                                        power(pow1, p1, I[0] - a) * power(pow2, p2, I[1] - b);
                r.add_term(Index2{{a, b}}, coef);
            }
    }
    return r;
}

namespace {

const char* kVarNames3[] = {"x", "y", "z"};

template <int N>
std::string monomial_str(const MultiIndex<N>& I) {
    std::string s;
    for (int v = 0; v < N; ++v) {
        if (I[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += kVarNames3[v];
        if (I[v] > 1) s += "^" + std::to_string(I[v]);
    }
    return s;
}

template <int N>
std::string series_str(const TruncatedSeries<N>& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [I, c] : f.terms()) {
        std::string mono = monomial_str(I);
        std::string coef;
        bool negative = false;
        if (c.is_real()) {
            Rational a(abs(c.re()));
            negative = is_negative(c.re());
            if (a != 1 || mono.empty()) coef = to_string(a);
        } else {
            coef = "(" + c.str() + ")";
        }
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        out += coef;
        if (!coef.empty() && !mono.empty()) out += "*";
        out += mono;
    }
    return out;
}

} // namespace

std::string series_to_string(const TruncatedSeries<2>& f) { return series_str(f); }
std::string series_to_string(const TruncatedSeries<3>& f) { return series_str(f); }

} // namespace holint

#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "holint/multi_index.hpp"
#include "holint/rational.hpp"

namespace holint {

// Formal power series in N variables truncated at a total degree (the
// "order", inclusive). Coefficients are exact Gaussian rationals stored
// sparsely in graded-lex term order with no explicit zeros.
//
// Binary arithmetic requires equal orders; mixing orders is an error, not a
// silent re-truncation. truncated() lowers the order explicitly, and the
// monomial multiplication / division helpers change it by the monomial
// degree (those operations lose no information).
template <int N>
class TruncatedSeries {
public:
    using Index = MultiIndex<N>;
    using TermMap = std::map<Index, GaussianRational>;

    explicit TruncatedSeries(int order) : order_(order) {
        if (order < 0) throw DegenerateInputError("negative truncation order");
    }

    static TruncatedSeries zero(int order) { return TruncatedSeries(order); }

    static TruncatedSeries constant(int order, const GaussianRational& c) {
        TruncatedSeries s(order);
        s.add_term(Index{}, c);
        return s;
    }

    static TruncatedSeries monomial(int order, const Index& I, const GaussianRational& c = GaussianRational(1)) {
        TruncatedSeries s(order);
        s.add_term(I, c);
        return s;
    }

    static TruncatedSeries variable(int order, int var) { return monomial(order, Index::unit(var)); }

    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GaussianRational coeff(const Index& I) const {
        auto it = terms_.find(I);
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    GaussianRational constant_term() const { return coeff(Index{}); }
    bool in_maximal_ideal() const { return constant_term().is_zero(); }

    // Lowest total degree with a nonzero term; order()+1 for the zero series.
    int min_degree() const { return terms_.empty() ? order_ + 1 : terms_.begin()->first.order(); }

    // Accumulates c onto the coefficient of x^I, dropping it if the sum is
    // zero or the degree exceeds the truncation order.
    TruncatedSeries& add_term(const Index& I, const GaussianRational& c) {
        for (int v : I.e)
            if (v < 0) throw DegenerateInputError("negative exponent");
        if (c.is_zero() || I.order() > order_) return *this;
        auto [it, inserted] = terms_.emplace(I, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
        return *this;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(order_);
        for (const auto& [I, c] : terms_) r.terms_.emplace(I, -c);
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        check_orders(a, b);
        TruncatedSeries r = a;
        for (const auto& [I, c] : b.terms_) r.add_term(I, c);
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        check_orders(a, b);
        TruncatedSeries r = a;
        for (const auto& [I, c] : b.terms_) r.add_term(I, -c);
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        check_orders(a, b);
        TruncatedSeries r(a.order_);
        for (const auto& [I, c] : a.terms_) {
            if (I.order() > a.order_) continue;
            for (const auto& [J, d] : b.terms_) {
                if (I.order() + J.order() > a.order_) break; // graded order: later J only larger
                r.add_term(I + J, c * d);
            }
        }
        return r;
    }

    friend TruncatedSeries operator*(const GaussianRational& c, const TruncatedSeries& a) {
        TruncatedSeries r(a.order_);
        if (c.is_zero()) return r;
        for (const auto& [I, v] : a.terms_) r.terms_.emplace(I, c * v);
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const GaussianRational& c) { return c * a; }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

    std::complex<double> eval(const std::array<std::complex<double>, N>& p) const {
        std::array<std::vector<std::complex<double>>, N> pow;
        for (int v = 0; v < N; ++v) {
            pow[static_cast<size_t>(v)].assign(static_cast<size_t>(order_) + 1, 1.0);
            for (int k = 1; k <= order_; ++k)
                pow[static_cast<size_t>(v)][static_cast<size_t>(k)] =
                    pow[static_cast<size_t>(v)][static_cast<size_t>(k - 1)] * p[static_cast<size_t>(v)];
        }
        std::complex<double> acc = 0.0;
        for (const auto& [I, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (int v = 0; v < N; ++v) t *= pow[static_cast<size_t>(v)][static_cast<size_t>(I[v])];
            acc += t;
        }
        return acc;
    }

    // Canonical text form: graded-lex terms joined by " + ", real rational
    // coefficients with their sign folded in, complex ones parenthesized.
    std::string str() const;

private:
    static void check_orders(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.order_ != b.order_)
            throw OrderMismatchError("series orders differ: " + std::to_string(a.order_) + " vs " +
                                     std::to_string(b.order_));
    }

    int order_;
    TermMap terms_;
};

using Series2 = TruncatedSeries<2>;
using Series3 = TruncatedSeries<3>;

// --- order-changing primitives -------------------------------------------

template <int N>
TruncatedSeries<N> truncated(const TruncatedSeries<N>& f, int order) {
    if (order > f.order()) throw OrderMismatchError("cannot raise truncation order");
    TruncatedSeries<N> r(order);
    for (const auto& [I, c] : f.terms()) {
        if (I.order() > order) break;
        r.add_term(I, c);
    }
    return r;
}

// f * c*x^J, exact: the order rises by |J|.
template <int N>
TruncatedSeries<N> mul_monomial(const TruncatedSeries<N>& f, const MultiIndex<N>& J,
                                const GaussianRational& c = GaussianRational(1)) {
    TruncatedSeries<N> r(f.order() + J.order());
    if (c.is_zero()) return r;
    for (const auto& [I, v] : f.terms()) r.add_term(I + J, c * v);
    return r;
}

// Exact division by x^J; every stored term must be divisible.
template <int N>
TruncatedSeries<N> divide_monomial(const TruncatedSeries<N>& f, const MultiIndex<N>& J) {
    if (f.order() < J.order()) throw OrderMismatchError("monomial division below order 0");
    TruncatedSeries<N> r(f.order() - J.order());
    for (const auto& [I, v] : f.terms()) {
        if (!J.divides(I)) throw DegenerateInputError("series not divisible by monomial " + J.str());
        r.add_term(I - J, v);
    }
    return r;
}

template <int N>
TruncatedSeries<N> derivative(const TruncatedSeries<N>& f, int var) {
    if (f.order() < 1) throw OrderMismatchError("derivative of an order-0 series");
    TruncatedSeries<N> r(f.order() - 1);
    for (const auto& [I, c] : f.terms()) {
        int e = I[var];
        if (e == 0) continue;
        MultiIndex<N> J = I;
        J[var] = e - 1;
        r.add_term(J, GaussianRational(e) * c);
    }
    return r;
}

// Multiplicative inverse of a unit, exact up to the truncation order.
template <int N>
TruncatedSeries<N> invert_unit(const TruncatedSeries<N>& u) {
    GaussianRational c0 = u.constant_term();
    if (c0.is_zero()) throw NonUnitError("series has zero constant term");
    GaussianRational ic0 = c0.inverse();
    int d = u.order();
    // 1/u = (1/c0) * sum_j w^j with w = 1 - u/c0 in the maximal ideal.
    TruncatedSeries<N> w = TruncatedSeries<N>::constant(d, GaussianRational(1)) - ic0 * u;
    TruncatedSeries<N> acc = TruncatedSeries<N>::constant(d, GaussianRational(1));
    TruncatedSeries<N> pw = TruncatedSeries<N>::constant(d, GaussianRational(1));
    for (int j = 1; j <= d; ++j) {
        pw = pw * w;
        if (pw.is_zero()) break;
        acc = acc + pw;
    }
    return ic0 * acc;
}

// Composition f(images...), where every image lies in the maximal ideal so
// the result is exact up to f's order. Image orders must match f's.
template <int N, int M>
TruncatedSeries<M> substitute(const TruncatedSeries<N>& f,
                              const std::array<TruncatedSeries<M>, static_cast<std::size_t>(N)>& images) {
    int d = f.order();
    for (const auto& g : images) {
        if (g.order() != d) throw OrderMismatchError("substitution image order differs from source");
        if (!g.in_maximal_ideal())
            throw InvalidSubstitutionError("substitution image has a constant term");
    }
    // Powers of each image, computed on demand.
    std::array<std::vector<TruncatedSeries<M>>, N> pows;
    for (int v = 0; v < N; ++v)
        pows[static_cast<size_t>(v)].push_back(TruncatedSeries<M>::constant(d, GaussianRational(1)));
    auto power = [&](int v, int e) -> const TruncatedSeries<M>& {
        auto& pv = pows[static_cast<size_t>(v)];
        while (static_cast<int>(pv.size()) <= e) pv.push_back(pv.back() * images[static_cast<size_t>(v)]);
        return pv[static_cast<size_t>(e)];
    };
    TruncatedSeries<M> r(d);
    for (const auto& [I, c] : f.terms()) {
        TruncatedSeries<M> t = TruncatedSeries<M>::constant(d, c);
        for (int v = 0; v < N; ++v)
            if (I[v] > 0) t = t * power(v, I[v]);
        r = r + t;
    }
    return r;
}

// Partial evaluation z = z0 of a 3-variable series, treating the stored
// terms as the actual polynomial (terms beyond the truncation order would
// feed lower (x,y)-degrees, so the result is exact only under that reading).
TruncatedSeries<2> restrict_last(const TruncatedSeries<3>& f, const GaussianRational& z0);

// Series in permuted coordinates x'_i = x_{perm[i]}.
template <int N>
TruncatedSeries<N> permute_vars(const TruncatedSeries<N>& f, const std::array<int, static_cast<std::size_t>(N)>& perm) {
    TruncatedSeries<N> r(f.order());
    for (const auto& [I, c] : f.terms()) {
        MultiIndex<N> J;
        for (int v = 0; v < N; ++v) J[v] = I[perm[static_cast<size_t>(v)]];
        r.add_term(J, c);
    }
    return r;
}

// Shift of the origin, f(x + p1, y + p2), with the stored terms read as a
// polynomial (a truncated tail would contribute below the order).
TruncatedSeries<2> translate(const TruncatedSeries<2>& f, const GaussianRational& p1, const GaussianRational& p2);

std::string series_to_string(const TruncatedSeries<2>& f);
std::string series_to_string(const TruncatedSeries<3>& f);

template <>
inline std::string TruncatedSeries<2>::str() const { return series_to_string(*this); }
template <>
inline std::string TruncatedSeries<3>::str() const { return series_to_string(*this); }

} // namespace holint

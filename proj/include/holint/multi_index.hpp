#pragma once

#include <array>
#include <string>

#include "holint/errors.hpp"

namespace holint {

// Exponent vector of a monomial in N variables. operator< is the canonical
// graded-lexicographic term order (total degree first, then lexicographic
// with the first variable largest), so ordered containers iterate terms
// deterministically.
template <int N>
struct MultiIndex {
    static_assert(N == 2 || N == 3);
    std::array<int, N> e{};

    MultiIndex() = default;
    MultiIndex(std::array<int, N> exps) : e(exps) {} // NOLINT(google-explicit-constructor)

    int operator[](int k) const { return e[static_cast<size_t>(k)]; }
    int& operator[](int k) { return e[static_cast<size_t>(k)]; }

    int order() const {
        int s = 0;
        for (int v : e) s += v;
        return s;
    }

    // Membership in C_N: at most one component nonzero.
    bool on_axes() const {
        int nonzero = 0;
        for (int v : e)
            if (v != 0) ++nonzero;
        return nonzero <= 1;
    }

    bool is_zero() const {
        for (int v : e)
            if (v != 0) return false;
        return true;
    }

    bool divides(const MultiIndex& other) const {
        for (int k = 0; k < N; ++k)
            if (e[static_cast<size_t>(k)] > other.e[static_cast<size_t>(k)]) return false;
        return true;
    }

    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
        for (int k = 0; k < N; ++k) a.e[static_cast<size_t>(k)] += b.e[static_cast<size_t>(k)];
        return a;
    }
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r;
        for (int k = 0; k < N; ++k) {
            r.e[static_cast<size_t>(k)] = a.e[static_cast<size_t>(k)] - b.e[static_cast<size_t>(k)];
            if (r.e[static_cast<size_t>(k)] < 0) throw DegenerateInputError("multi-index subtraction went negative");
        }
        return r;
    }

    static MultiIndex unit(int var) {
        MultiIndex r;
        r.e[static_cast<size_t>(var)] = 1;
        return r;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e == b.e; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e != b.e; }

    // Graded-lex: lower total degree first; within a degree the lexicographically
    // larger exponent vector (x before y before z) comes first.
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        int oa = a.order(), ob = b.order();
        if (oa != ob) return oa < ob;
        return a.e > b.e;
    }

    std::string str() const {
        std::string s = "(";
        for (int k = 0; k < N; ++k) {
            if (k) s += ",";
            s += std::to_string(e[static_cast<size_t>(k)]);
        }
        return s + ")";
    }
};

using Index2 = MultiIndex<2>;
using Index3 = MultiIndex<3>;

} // namespace holint

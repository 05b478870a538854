#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

#include "holint/errors.hpp"

namespace holint {

// Exact rational scalar. GMP keeps denominators positive and in lowest
// terms after canonicalize(), which make_rational and all GaussianRational
// operations maintain.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_negative(const Rational& q) { return sgn(q) < 0; }

std::string to_string(const Rational& q);
double to_double(const Rational& q);

// True iff q is the square of a rational; *root receives the non-negative
// square root when given.
bool is_rational_square(const Rational& q, Rational* root = nullptr);

// Element of Q(i): re + im*i with exact rational parts.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n, 1), im_(0) {} // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)), im_(0) {} // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, Rational(-im_)}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw DegenerateInputError("division by zero in Q(i)");
        Rational n = o.norm();
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational inverse() const {
        if (is_zero()) throw DegenerateInputError("inverse of zero in Q(i)");
        Rational n = norm();
        return {re_ / n, Rational(-im_) / n};
    }

    std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

    // Canonical text: "a/b" for real values, "a/b+c/di" otherwise
    // (denominator 1 omitted, sign of the imaginary part folded into +/-).
    std::string str() const;

private:
    Rational re_, im_;
};

} // namespace holint

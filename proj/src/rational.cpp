#include "holint/rational.hpp"

namespace holint {

Rational make_rational(long num, long den) {
    if (den == 0) throw DegenerateInputError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

double to_double(const Rational& q) {
    return q.get_d();
}

bool is_rational_square(const Rational& q, Rational* root) {
    if (sgn(q) < 0) return false;
    if (sgn(q) == 0) {
        if (root) *root = 0;
        return true;
    }
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    if (root) {
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        *root = Rational(rn, rd);
    }
    return true;
}

std::string GaussianRational::str() const {
    if (is_real()) return to_string(re_);
    std::string s = to_string(re_);
    Rational ai(abs(im_));
    s += (sgn(im_) < 0) ? "-" : "+";
    if (ai != 1) s += to_string(ai);
    s += "i";
    return s;
}

} // namespace holint

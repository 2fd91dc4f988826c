#include "nal/gaussian.hpp"

#include <sstream>

namespace nal {

GaussianRational GaussianRational::fraction(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return GaussianRational(q);
}

GaussianRational GaussianRational::pow(long e) const {
    if (e < 0) {
        GaussianRational inv = GaussianRational(1) / *this;
        return inv.pow(-e);
    }
    GaussianRational acc(1), base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

namespace {

// Exact square root of a nonnegative rational, if it exists.
bool rational_sqrt(const mpq_class& q, mpq_class* out) {
    if (q < 0) return false;
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    *out = mpq_class(rn, rd);
    return true;
}

} // namespace

bool GaussianRational::square_root(GaussianRational* root) const {
    // Solve (x+yi)^2 = re + im*i exactly over Q.
    if (im_ == 0) {
        mpq_class r;
        if (re_ >= 0) {
            if (!rational_sqrt(re_, &r)) return false;
            *root = GaussianRational(r);
        } else {
            if (!rational_sqrt(mpq_class(-re_), &r)) return false;
            *root = GaussianRational(mpq_class(0), r);
        }
        return true;
    }
    // x^2 - y^2 = re, 2xy = im; norm^2 = re^2+im^2 must be a rational square n,
    // then x^2 = (re + n)/2.
    mpq_class norm2 = re_ * re_ + im_ * im_;
    mpq_class n;
    if (!rational_sqrt(norm2, &n)) return false;
    mpq_class x2 = (re_ + n) / 2;
    mpq_class x;
    if (!rational_sqrt(x2, &x) || x == 0) return false;
    mpq_class y = im_ / (2 * x);
    GaussianRational g(x, y);
    if (g * g != *this) return false;
    if (g.re_ < 0 || (g.re_ == 0 && g.im_ < 0)) g = -g;
    *root = g;
    return true;
}

std::string GaussianRational::str() const {
    std::ostringstream os;
    if (im_ == 0) {
        os << re_.get_str();
    } else if (re_ == 0) {
        if (im_ == 1) os << "i";
        else if (im_ == -1) os << "-i";
        else os << im_.get_str() << "*i";
    } else {
        os << re_.get_str();
        if (im_ > 0) os << "+";
        if (im_ == 1) os << "i";
        else if (im_ == -1) os << "-i";
        else os << im_.get_str() << "*i";
    }
    return os.str();
}

} // namespace nal

#ifndef NAL_GAUSSIAN_HPP
#define NAL_GAUSSIAN_HPP

#include <gmpxx.h>
#include <string>

#include "nal/errors.hpp"

namespace nal {

/// Element of Q(i): re + im*i with arbitrary-precision rational parts.
/// mpq_class keeps both parts in canonical reduced form.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long v) : re_(v), im_(0) {}            // NOLINT(google-explicit-constructor)
    GaussianRational(const mpq_class& re) : re_(re), im_(0) {}  // NOLINT
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }
    static GaussianRational fraction(long num, long den);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }
    bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }

    GaussianRational operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }
    GaussianRational conj() const { return {re_, mpq_class(-im_)}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_; im_ += o.im_; return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_; im_ -= o.im_; return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r); im_ = std::move(m);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw ZeroDivide();
        mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
        mpq_class m = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r); im_ = std::move(m);
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

    /// Total order used for canonical term ordering; not a numeric order.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    GaussianRational pow(long e) const;

    /// True when this = g^2 for some g in Q(i); if so *root = principal g.
    /// Principal: re(g) > 0, or re(g) == 0 and im(g) >= 0.
    bool square_root(GaussianRational* root) const;

    std::string str() const;

private:
    mpq_class re_, im_;
};

using GQ = GaussianRational;

} // namespace nal

#endif

#ifndef NAL_POLY_HPP
#define NAL_POLY_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nal/gaussian.hpp"
#include "nal/symbols.hpp"

namespace nal {

/// Monomial: sorted (variable id, exponent) pairs, exponents > 0.
using Mono = std::vector<std::pair<int, int>>;

/// Graded order; ties broken lexicographically by variable id with t (id 0)
/// least significant, so valuation extraction is a plain coefficient scan.
struct MonoOrder {
    bool operator()(const Mono& a, const Mono& b) const;
};

/// Sparse multivariate polynomial over Q(i).
class Poly {
public:
    using TermMap = std::map<Mono, GQ, MonoOrder>;

    Poly() = default;
    Poly(long v) { if (v != 0) terms_[Mono{}] = GQ(v); }  // NOLINT
    Poly(const GQ& c) { if (!c.is_zero()) terms_[Mono{}] = c; }  // NOLINT

    static Poly variable(int var, int exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    GQ constant_value() const;          // requires is_constant()
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    int degree(int var) const;
    int total_degree() const;
    std::set<int> vars() const;
    bool contains_var(int var) const { return degree(var) > 0; }

    /// Leading term under the global order.
    const std::pair<const Mono, GQ>& leading() const;
    GQ lc_global() const { return leading().second; }

    /// Leading coefficient as polynomial in `var` (coefficient of highest power).
    Poly lc(int var) const { return coeff_of(var, degree(var)); }
    /// Coefficient of var^k, a polynomial in the remaining variables.
    Poly coeff_of(int var, int k) const;

    Poly derivative(int var) const;

    /// Smallest exponent of t over all terms; returns large value for 0.
    int ord_t() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly mul_term(const Mono& m, const GQ& c) const;
    Poly mul_scalar(const GQ& c) const;
    Poly pow(int e) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    /// Arbitrary total order (for canonical sorting of polynomial lists).
    friend bool operator<(const Poly& a, const Poly& b);

    /// Exact division; throws Error when not divisible.
    Poly divexact(const Poly& d) const;
    bool divides(const Poly& d, Poly* quotient) const;  // d | this ?

    /// Simultaneous substitution var -> poly for the given bindings.
    Poly substitute(const std::map<int, Poly>& bindings) const;

    /// Evaluate with every variable bound (missing variable -> error).
    GQ eval(const std::map<int, GQ>& values) const;

    std::string str() const;

    void add_term(const Mono& m, const GQ& c);

private:
    TermMap terms_;
};

/// Monic (leading coefficient 1) multivariate gcd over Q(i).
Poly poly_gcd(const Poly& a, const Poly& b);

/// Pseudo-remainder of a by b with respect to var.
Poly pseudo_rem(const Poly& a, const Poly& b, int var);

/// Resultant with respect to var (Sylvester determinant, fraction-free).
Poly resultant(const Poly& a, const Poly& b, int var);

/// Content of p as a polynomial in var (gcd of coefficients, monic).
Poly content_wrt(const Poly& p, int var);

/// p = s^2 * q; pulls repeated factors out of a radicand.
void extract_square(const Poly& p, Poly* s, Poly* q);

/// Fraction-free determinant of a square polynomial matrix (Bareiss).
Poly poly_det_bareiss(std::vector<std::vector<Poly>> m);

} // namespace nal

#endif

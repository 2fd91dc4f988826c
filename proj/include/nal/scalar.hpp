#ifndef NAL_SCALAR_HPP
#define NAL_SCALAR_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nal/poly.hpp"

namespace nal {

/// Polynomials asserted nonzero (side conditions like "alpha != 0",
/// carried as the polynomial alpha).
class Constraints {
public:
    void add(const Poly& p);
    void merge(const Constraints& o);
    const std::vector<Poly>& nonzero() const { return nonzero_; }
    bool empty() const { return nonzero_.empty(); }

    /// True when p is a nonzero constant, a monomial in the variables
    /// (parameters are transcendental, hence units), or a product of such
    /// factors and declared-nonzero polynomials.
    bool implies_nonzero(const Poly& p) const;

    /// Throws ConstraintViolated if some constraint vanishes under the
    /// given (complete, constant) parameter values.
    void check_values(const std::map<int, GQ>& values) const;

    std::vector<std::string> str_list() const;

private:
    std::vector<Poly> nonzero_;
};

struct ScalarLimit;

/// Element of Q(i)(params)(t), optionally extended by one square root:
///     num/den + (snum/sden) * sqrt(rad)
/// Canonical form: fractions reduced with monic denominators; rad has
/// integer primitive coefficients, positive leading sign, square part
/// extracted.  rad is the zero polynomial iff there is no sqrt part.
class Scalar {
public:
    Scalar() : den_(1), sden_(1) {}
    Scalar(long v) : num_(v), den_(1), sden_(1) {}            // NOLINT
    Scalar(const GQ& c) : num_(c), den_(1), sden_(1) {}        // NOLINT
    Scalar(const Poly& p) : num_(p), den_(1), sden_(1) {}      // NOLINT

    static Scalar variable(int var) { return Scalar(Poly::variable(var)); }
    static Scalar t() { return variable(symbols::t()); }
    static Scalar i() { return Scalar(GQ::i()); }
    static Scalar fraction(const Poly& n, const Poly& d);
    /// sqrt of a sqrt-free scalar; folds perfect squares.
    static Scalar sqrt(const Scalar& x);
    /// c * sqrt(rad), like sqrt() but with an explicit cofactor.
    static Scalar with_radical(const Scalar& coeff, const Poly& radicand);

    bool is_zero() const { return num_.is_zero() && snum_.is_zero(); }
    bool is_one() const;
    bool has_sqrt() const { return !snum_.is_zero(); }
    bool is_constant() const;
    GQ constant_value() const;
    bool is_polynomial() const { return den_ == Poly(1) && !has_sqrt(); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Poly& sqrt_num() const { return snum_; }
    const Poly& sqrt_den() const { return sden_; }
    const Poly& radicand() const { return rad_; }

    std::set<int> vars() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }
    Scalar inverse() const { return Scalar(1) / *this; }
    Scalar pow(int e) const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b);

    /// t-adic valuation in half-integers (result is 2*valuation).
    /// Parameters are treated as units; a lowest coefficient whose vanishing
    /// the constraints do not settle raises IndeterminateValuation.
    /// When the radicand survives at t = 0 as a perfect square the two
    /// series embeddings differ; `branch` picks one.
    int valuation2(const Constraints& con = {}, int branch = +1) const;
    /// Integer valuation; throws if the true valuation is half-integral.
    int valuation_at_zero(const Constraints& con = {}) const;

    /// Lower bound for the valuation at every admissible parameter value:
    /// vanishing of a numerator coefficient only raises the valuation, so
    /// only denominator and radicand leading coefficients are guarded.
    int valuation2_lower(const Constraints& con = {}, int branch = +1) const;

    /// Limit as t -> 0.  branch = +1 / -1 chooses the square root of f(0)
    /// when the radicand survives to t = 0 as a perfect square.
    ScalarLimit limit_at_zero(const Constraints& con = {}, int branch = +1) const;

    Scalar substitute(const std::map<int, Scalar>& bindings) const;
    Scalar substitute_var(int var, const Scalar& value) const;

    std::complex<double> eval_numeric(const std::map<int, std::complex<double>>& values,
                                      int branch = +1) const;

    std::string str() const;

private:
    void normalize();
    int valuation2_impl(const Constraints& con, int branch, bool strict) const;
    bool split_root(Poly* g0) const;
    void split_series(const Constraints& con, int branch, int len,
                      const Poly& g0, int* lo, std::vector<Scalar>* coeffs) const;
    Poly num_, den_;     // rational part
    Poly snum_, sden_;   // sqrt coefficient
    Poly rad_;           // radicand; zero <=> absent
};

struct ScalarLimit {
    bool pole = false;
    Scalar value;                // t-free
    bool symbolic_sqrt = false;  // value carries an unresolved sqrt
    int branch = +1;             // branch used for sqrt(f(0)) when resolved
};

/// Exact square root of a polynomial if it is a perfect square over Q(i).
bool poly_square_root(const Poly& p, Poly* root);

} // namespace nal

#endif

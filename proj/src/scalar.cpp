#include "nal/scalar.hpp"

#include <algorithm>
#include <sstream>

#include "nal/errors.hpp"

namespace nal {

// ---------------------------------------------------------------------------
// Constraints

void Constraints::add(const Poly& p) {
    if (p.is_zero()) throw ConstraintViolated("constraint polynomial is identically zero");
    if (p.is_constant()) return;
    Poly q = p.mul_scalar(GQ(1) / p.lc_global());
    for (const Poly& e : nonzero_)
        if (e == q) return;
    nonzero_.push_back(q);
}

void Constraints::merge(const Constraints& o) {
    for (const Poly& p : o.nonzero_) add(p);
}

bool Constraints::implies_nonzero(const Poly& p) const {
    if (p.is_zero()) return false;
    Poly q = p;
    for (int guard = 0; guard < 64; ++guard) {
        if (q.is_constant()) return true;
        if (q.term_count() == 1) return true;  // monomial: variables are units
        bool reduced = false;
        for (const Poly& c : nonzero_) {
            Poly quot;
            if (q.divides(c, &quot)) {
                q = quot;
                reduced = true;
                break;
            }
        }
        if (!reduced) return false;
    }
    return false;
}

void Constraints::check_values(const std::map<int, GQ>& values) const {
    for (const Poly& p : nonzero_) {
        bool complete = true;
        for (int v : p.vars())
            if (!values.count(v)) { complete = false; break; }
        if (!complete) continue;
        if (p.eval(values).is_zero())
            throw ConstraintViolated("binding violates constraint " + p.str() + " != 0");
    }
}

std::vector<std::string> Constraints::str_list() const {
    std::vector<std::string> out;
    for (const Poly& p : nonzero_) out.push_back(p.str());
    return out;
}

// ---------------------------------------------------------------------------
// Scalar

namespace {

void reduce_fraction(Poly& n, Poly& d) {
    if (d.is_zero()) throw ZeroDenominator();
    if (n.is_zero()) { d = Poly(1); return; }
    Poly g = poly_gcd(n, d);
    if (!g.is_constant()) {
        n = n.divexact(g);
        d = d.divexact(g);
    }
    GQ lc = d.lc_global();
    if (!lc.is_one()) {
        GQ inv = GQ(1) / lc;
        n = n.mul_scalar(inv);
        d = d.mul_scalar(inv);
    }
}

// Largest integer square divisor (small primes, then perfect-square check).
mpz_class square_part(mpz_class n) {
    if (n < 0) n = -n;
    if (n <= 1) return 1;
    mpz_class s = 1;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        mpz_class p2 = mpz_class(p) * p;
        while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) {
            n /= p2;
            s *= p;
        }
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        s *= r;
    }
    return s;
}

} // namespace

bool poly_square_root(const Poly& p, Poly* root) {
    if (p.is_zero()) { *root = Poly(); return true; }
    Poly s, q;
    extract_square(p, &s, &q);
    if (!q.is_constant()) return false;
    GQ g;
    if (!q.constant_value().square_root(&g)) return false;
    Poly r = s.mul_scalar(g);
    if (r * r != p) return false;
    *root = r;
    return true;
}

Scalar Scalar::fraction(const Poly& n, const Poly& d) {
    Scalar r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
}

Scalar Scalar::with_radical(const Scalar& coeff, const Poly& radicand) {
    if (coeff.has_sqrt())
        throw MixedRadicals("sqrt coefficient already carries a radical");
    Scalar r;
    r.snum_ = coeff.num_;
    r.sden_ = coeff.den_;
    r.rad_ = radicand;
    r.normalize();
    return r;
}

Scalar Scalar::sqrt(const Scalar& x) {
    if (x.is_zero()) return Scalar();
    if (x.has_sqrt()) throw MixedRadicals("nested radicals are not supported");
    // sqrt(n/d) = sqrt(n*d)/d
    Poly radicand = x.num_ * x.den_;
    return with_radical(Scalar::fraction(Poly(1), x.den_), radicand);
}

bool Scalar::is_one() const {
    return snum_.is_zero() && num_ == Poly(1) && den_ == Poly(1);
}

bool Scalar::is_constant() const {
    return num_.is_constant() && den_.is_constant() && snum_.is_zero();
}

GQ Scalar::constant_value() const {
    if (!is_constant()) throw Error("constant_value on non-constant scalar: " + str());
    return num_.constant_value() / den_.constant_value();
}

std::set<int> Scalar::vars() const {
    std::set<int> s = num_.vars();
    for (int v : den_.vars()) s.insert(v);
    for (int v : snum_.vars()) s.insert(v);
    for (int v : sden_.vars()) s.insert(v);
    for (int v : rad_.vars()) s.insert(v);
    return s;
}

void Scalar::normalize() {
    reduce_fraction(num_, den_);
    if (snum_.is_zero()) {
        sden_ = Poly(1);
        rad_ = Poly();
        return;
    }
    if (rad_.is_zero()) {  // sqrt(0)
        snum_ = Poly();
        sden_ = Poly(1);
        return;
    }
    // Pull square factors out of the radicand.
    Poly sq, core;
    extract_square(rad_, &sq, &core);
    Poly coeff_extra = sq;

    // Make coefficients integral: scale by L^2 under the root.
    mpz_class lcm_den = 1;
    bool has_imag = false;
    for (const auto& [m, c] : core.terms()) {
        if (c.im() != 0) has_imag = true;
        mpz_class d = c.re().get_den();
        mpz_class d2 = c.im().get_den();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d2.get_mpz_t());
    }
    GQ i_factor(1);
    if (!has_imag) {
        if (lcm_den != 1) {
            core = core.mul_scalar(GQ(mpq_class(lcm_den)));
            // sqrt(core/L) = sqrt(core*L)/L
            core = core.mul_scalar(GQ(mpq_class(lcm_den)));
            coeff_extra = coeff_extra.mul_scalar(GQ(mpq_class(1, 1)) / GQ(mpq_class(lcm_den)));
        }
        // integer content: extract its square part
        mpz_class g = 0;
        bool all_rational = true;
        for (const auto& [m, c] : core.terms()) {
            if (c.im() != 0) { all_rational = false; break; }
            mpz_class n = c.re().get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        }
        if (all_rational && g > 0) {
            mpz_class s = square_part(g);
            if (s > 1) {
                mpz_class s2 = s * s;
                core = core.mul_scalar(GQ(mpq_class(1) / mpq_class(s2)));
                coeff_extra = coeff_extra.mul_scalar(GQ(mpq_class(s)));
            }
        }
        // sign: leading coefficient positive; sqrt(-f) = i*sqrt(f)
        if (!core.is_zero()) {
            GQ lc = core.lc_global();
            if (lc.im() == 0 && lc.re() < 0) {
                core = -core;
                i_factor = GQ::i();
            }
        }
    }
    // Perfect-square constant radicand folds into the rational part.
    if (core.is_constant()) {
        GQ g;
        if (core.constant_value().square_root(&g)) {
            Poly add_num = snum_ * coeff_extra.mul_scalar(g * i_factor);
            // num/den + add_num/sden
            num_ = num_ * sden_ + add_num * den_;
            den_ = den_ * sden_;
            snum_ = Poly();
            sden_ = Poly(1);
            rad_ = Poly();
            reduce_fraction(num_, den_);
            return;
        }
    }
    snum_ = snum_ * coeff_extra.mul_scalar(i_factor);
    rad_ = core;
    reduce_fraction(snum_, sden_);
    if (snum_.is_zero()) {
        sden_ = Poly(1);
        rad_ = Poly();
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    r.snum_ = -r.snum_;
    return r;
}

namespace {

void require_same_radicand(const Scalar& a, const Scalar& b) {
    if (a.has_sqrt() && b.has_sqrt() && a.radicand() != b.radicand())
        throw MixedRadicals("distinct radicands sqrt(" + a.radicand().str() +
                            ") and sqrt(" + b.radicand().str() + ")");
}

} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_radicand(a, b);
    Scalar r;
    r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
    r.den_ = a.den_ * b.den_;
    r.snum_ = a.snum_ * b.sden_ + b.snum_ * a.sden_;
    r.sden_ = a.sden_ * b.sden_;
    r.rad_ = a.has_sqrt() ? a.rad_ : b.rad_;
    r.normalize();
    return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_radicand(a, b);
    Scalar r;
    Poly rad = a.has_sqrt() ? a.rad_ : b.rad_;
    // (p + q sqrt(f)) (u + v sqrt(f)) = pu + qv f + (pv + qu) sqrt(f)
    r.num_ = a.num_ * b.num_ * a.sden_ * b.sden_ +
             a.snum_ * b.snum_ * rad * a.den_ * b.den_;
    r.den_ = a.den_ * b.den_ * a.sden_ * b.sden_;
    r.snum_ = a.num_ * b.snum_ * a.sden_ * b.den_ +
              a.snum_ * b.num_ * a.den_ * b.sden_;
    r.sden_ = r.den_;
    r.rad_ = rad;
    r.normalize();
    return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw ZeroDivide("scalar division by zero");
    require_same_radicand(a, b);
    if (!b.has_sqrt()) {
        Scalar inv;
        inv.num_ = b.den_;
        inv.den_ = b.num_;
        inv.sden_ = Poly(1);
        inv.normalize();
        return a * inv;
    }
    // 1/(u + v sqrt(f)) = (u - v sqrt(f)) / (u^2 - v^2 f)
    Scalar conj = b;
    conj.snum_ = -conj.snum_;
    Scalar norm = b * conj;   // sqrt part cancels
    if (norm.has_sqrt()) throw Error("internal: radical conjugation failed");
    if (norm.is_zero())
        throw ZeroDivide("radicand is a perfect square in disguise: " + b.str());
    return a * conj / norm;
}

Scalar Scalar::pow(int e) const {
    if (e < 0) return (Scalar(1) / *this).pow(-e);
    Scalar acc(1), base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        if (e >>= 1) base *= base;
    }
    return acc;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.snum_.is_zero() != b.snum_.is_zero()) return false;
    if (!a.snum_.is_zero() && a.rad_ != b.rad_) return false;
    return a.num_ == b.num_ && a.den_ == b.den_ &&
           a.snum_ == b.snum_ && a.sden_ == b.sden_;
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    if (a.den_ != b.den_) return a.den_ < b.den_;
    if (a.snum_ != b.snum_) return a.snum_ < b.snum_;
    if (a.sden_ != b.sden_) return a.sden_ < b.sden_;
    return a.rad_ < b.rad_;
}

namespace {

// Lowest-t coefficient with an indeterminacy check.
Poly low_t_coeff(const Poly& p, const Constraints& con) {
    int k = p.ord_t();
    Poly c = p.coeff_of(symbols::t(), k);
    if (!c.is_constant() && !con.implies_nonzero(c))
        throw IndeterminateValuation(c.str());
    return c;
}

// Truncated Laurent series in t with t-free exact coefficients.
// Represents sum_k c[k] * t^(lo+k); coefficients beyond the stored range
// are truncated, not zero.
struct TSeries {
    int lo = 0;
    std::vector<Scalar> c;
};

TSeries series_from_poly(const Poly& p, int len) {
    TSeries s;
    if (p.is_zero()) { s.lo = 1 << 20; return s; }
    s.lo = p.ord_t();
    s.c.resize(static_cast<size_t>(len));
    for (int k = 0; k < len; ++k)
        s.c[static_cast<size_t>(k)] = Scalar(p.coeff_of(symbols::t(), s.lo + k));
    return s;
}

TSeries series_mul(const TSeries& a, const TSeries& b, int len) {
    TSeries r;
    r.lo = a.lo + b.lo;
    r.c.assign(static_cast<size_t>(len), Scalar());
    for (size_t i = 0; i < a.c.size() && i < static_cast<size_t>(len); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size() && i + j < static_cast<size_t>(len); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

TSeries series_add(const TSeries& a, const TSeries& b, int len) {
    TSeries r;
    r.lo = std::min(a.lo, b.lo);
    r.c.assign(static_cast<size_t>(len), Scalar());
    for (size_t i = 0; i < a.c.size(); ++i) {
        int k = a.lo + static_cast<int>(i) - r.lo;
        if (k >= 0 && k < len) r.c[static_cast<size_t>(k)] += a.c[i];
    }
    for (size_t i = 0; i < b.c.size(); ++i) {
        int k = b.lo + static_cast<int>(i) - r.lo;
        if (k >= 0 && k < len) r.c[static_cast<size_t>(k)] += b.c[i];
    }
    return r;
}

// Inverse of a series whose lowest stored coefficient is nonzero.
TSeries series_inv(const TSeries& u, int len, const Constraints& con) {
    if (u.c.empty() || u.c[0].is_zero())
        throw Error("series inverse of zero leading coefficient");
    if (!u.c[0].num().is_constant() && !con.implies_nonzero(u.c[0].num()))
        throw IndeterminateValuation(u.c[0].num().str());
    TSeries r;
    r.lo = -u.lo;
    r.c.assign(static_cast<size_t>(len), Scalar());
    Scalar inv0 = Scalar(1) / u.c[0];
    r.c[0] = inv0;
    for (int k = 1; k < len; ++k) {
        Scalar acc;
        for (int j = 1; j <= k; ++j) {
            if (static_cast<size_t>(j) >= u.c.size()) break;
            acc += u.c[static_cast<size_t>(j)] * r.c[static_cast<size_t>(k - j)];
        }
        r.c[static_cast<size_t>(k)] = -(acc * inv0);
    }
    return r;
}

// Square root series of f (ord_t f = 0, f(0) = g0^2); leading term branch*g0.
TSeries series_sqrt(const TSeries& f, const Poly& g0, int branch, int len) {
    TSeries s;
    s.lo = 0;
    s.c.assign(static_cast<size_t>(len), Scalar());
    Scalar s0{g0};
    if (branch < 0) s0 = -s0;
    s.c[0] = s0;
    Scalar half_inv_s0 = Scalar(1) / (Scalar(2) * s0);
    for (int k = 1; k < len; ++k) {
        Scalar fk = (static_cast<size_t>(k) < f.c.size()) ? f.c[static_cast<size_t>(k)] : Scalar();
        Scalar acc;
        for (int i = 1; i <= k - 1; ++i)
            acc += s.c[static_cast<size_t>(i)] * s.c[static_cast<size_t>(k - i)];
        s.c[static_cast<size_t>(k)] = (fk - acc) * half_inv_s0;
    }
    return s;
}

// p = t^ord * rest; returns rest evaluated at t = 0 (a parameter polynomial).
Poly strip_t_eval0(const Poly& p, int ord) {
    return p.coeff_of(symbols::t(), ord);
}

} // namespace

// Split case: the radicand survives at t = 0 as a perfect square, so the
// expression embeds into Laurent series and the rational and radical parts
// can cancel.  Fills the series of this scalar for the given branch.
void Scalar::split_series(const Constraints& con, int branch, int len,
                          const Poly& g0, int* lo, std::vector<Scalar>* coeffs) const {
    TSeries u;
    if (num_.is_zero()) {
        u.lo = 1 << 20;
    } else {
        u = series_mul(series_from_poly(num_, len),
                       series_inv(series_from_poly(den_, len), len, con), len);
    }
    TSeries v = series_mul(series_from_poly(snum_, len),
                           series_inv(series_from_poly(sden_, len), len, con), len);
    TSeries s = series_sqrt(series_from_poly(rad_, len), g0, branch, len);
    TSeries w = series_add(u, series_mul(v, s, len), len);
    *lo = w.lo;
    *coeffs = std::move(w.c);
}

bool Scalar::split_root(Poly* g0) const {
    if (snum_.is_zero() || rad_.is_zero() || rad_.ord_t() != 0) return false;
    return poly_square_root(rad_.coeff_of(symbols::t(), 0), g0);
}

int Scalar::valuation2(const Constraints& con, int branch) const {
    return valuation2_impl(con, branch, /*strict=*/true);
}

int Scalar::valuation2_lower(const Constraints& con, int branch) const {
    return valuation2_impl(con, branch, /*strict=*/false);
}

int Scalar::valuation2_impl(const Constraints& con, int branch, bool strict) const {
    if (is_zero()) return 1 << 29;
    Poly g0;
    if (split_root(&g0)) {
        // Bound: val(w) <= val(u^2 - v^2 f) - (lower bound for val of conjugate).
        Scalar u = Scalar::fraction(num_, den_);
        Scalar v = Scalar::fraction(snum_, sden_);
        Scalar rnorm = u * u - v * v * Scalar(rad_);
        if (rnorm.is_zero())
            throw Error("internal: radicand is a square of a rational function");
        int val_r = rnorm.num().ord_t() - rnorm.den().ord_t();
        int m0 = std::min(num_.is_zero() ? (1 << 20) : num_.ord_t() - den_.ord_t(),
                          snum_.ord_t() - sden_.ord_t());
        int len = std::max(val_r - 2 * m0 + 3, 4);
        if (len > 256) throw Error("series truncation bound too large");
        int lo = 0;
        std::vector<Scalar> c;
        split_series(con, branch, len, g0, &lo, &c);
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            if (strict && !c[k].num().is_constant() && !con.implies_nonzero(c[k].num()))
                throw IndeterminateValuation(c[k].num().str());
            return 2 * (lo + static_cast<int>(k));
        }
        throw Error("internal: series valuation bound exhausted for " + str());
    }
    int best = 1 << 29;
    if (!num_.is_zero()) {
        if (strict) low_t_coeff(num_, con);
        low_t_coeff(den_, con);
        best = std::min(best, 2 * (num_.ord_t() - den_.ord_t()));
    }
    if (!snum_.is_zero()) {
        if (strict) low_t_coeff(snum_, con);
        low_t_coeff(sden_, con);
        low_t_coeff(rad_, con);
        int v = 2 * (snum_.ord_t() - sden_.ord_t()) + rad_.ord_t();
        best = std::min(best, v);
    }
    return best;
}

int Scalar::valuation_at_zero(const Constraints& con) const {
    int v2 = valuation2(con);
    if (v2 >= (1 << 29)) return 1 << 28;
    if (v2 % 2 != 0)
        throw Error("half-integral valuation of " + str());
    return v2 / 2;
}

ScalarLimit Scalar::limit_at_zero(const Constraints& con, int branch) const {
    ScalarLimit lim;
    if (is_zero()) return lim;

    Poly g0;
    if (split_root(&g0)) {
        int v2 = valuation2(con, branch);
        if (v2 < 0) { lim.pole = true; return lim; }
        lim.branch = branch;
        if (v2 > 0) return lim;  // limit 0
        int len = 4;
        int lo = 0;
        std::vector<Scalar> c;
        split_series(con, branch, len, g0, &lo, &c);
        while (-lo >= static_cast<int>(c.size()))
            split_series(con, branch, -lo + 2, g0, &lo, &c);
        lim.value = c[static_cast<size_t>(-lo)];
        return lim;
    }

    int v2 = valuation2(con, branch);
    if (v2 < 0) { lim.pole = true; return lim; }

    Scalar value;
    if (!num_.is_zero()) {
        int vr = num_.ord_t() - den_.ord_t();
        if (vr == 0) {
            Poly n0 = strip_t_eval0(num_, num_.ord_t());
            Poly d0 = strip_t_eval0(den_, den_.ord_t());
            value = value + Scalar::fraction(n0, d0);
        }
    }
    if (!snum_.is_zero()) {
        int radord = rad_.ord_t();
        int vs2 = 2 * (snum_.ord_t() - sden_.ord_t()) + radord;
        if (vs2 == 0) {
            // f(0) is not a perfect square here: keep the radical symbolically
            Poly c0 = strip_t_eval0(snum_, snum_.ord_t());
            Poly cd0 = strip_t_eval0(sden_, sden_.ord_t());
            Poly f0 = rad_.coeff_of(symbols::t(), 0);
            value = value + Scalar::with_radical(Scalar::fraction(c0, cd0), f0);
            lim.symbolic_sqrt = true;
        }
    }
    lim.value = value;
    return lim;
}

Scalar Scalar::substitute(const std::map<int, Scalar>& bindings) const {
    auto subst_poly = [&bindings](const Poly& p) {
        Scalar acc;
        for (const auto& [m, c] : p.terms()) {
            Scalar term{GQ(c)};
            for (const auto& [v, e] : m) {
                auto it = bindings.find(v);
                if (it != bindings.end())
                    term *= it->second.pow(e);
                else
                    term *= Scalar::variable(v).pow(e);
            }
            acc += term;
        }
        return acc;
    };
    Scalar n = subst_poly(num_);
    Scalar d = subst_poly(den_);
    if (d.is_zero()) throw ZeroDenominator("denominator vanishes after substitution");
    Scalar result = n / d;
    if (!snum_.is_zero()) {
        Scalar sn = subst_poly(snum_);
        Scalar sd = subst_poly(sden_);
        if (sd.is_zero()) throw ZeroDenominator("denominator vanishes after substitution");
        Scalar radsub = subst_poly(rad_);
        if (radsub.has_sqrt() || sn.has_sqrt() || sd.has_sqrt())
            throw MixedRadicals("substitution introduces nested radicals");
        result += (sn / sd) * Scalar::sqrt(radsub);
    }
    return result;
}

Scalar Scalar::substitute_var(int var, const Scalar& value) const {
    return substitute({{var, value}});
}

std::complex<double> Scalar::eval_numeric(
        const std::map<int, std::complex<double>>& values, int branch) const {
    auto eval_poly = [&values](const Poly& p) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [m, c] : p.terms()) {
            std::complex<double> term(c.re().get_d(), c.im().get_d());
            for (const auto& [v, e] : m) {
                auto it = values.find(v);
                if (it == values.end())
                    throw Error("numeric eval: unbound variable " + symbols::name(v));
                for (int k = 0; k < e; ++k) term *= it->second;
            }
            acc += term;
        }
        return acc;
    };
    std::complex<double> r = eval_poly(num_) / eval_poly(den_);
    if (!snum_.is_zero()) {
        std::complex<double> s = std::sqrt(eval_poly(rad_));
        if (branch < 0) s = -s;
        r += eval_poly(snum_) / eval_poly(sden_) * s;
    }
    return r;
}

std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool printed = false;
    if (!num_.is_zero()) {
        bool frac = den_ != Poly(1);
        bool sum = num_.term_count() > 1;
        if (frac && sum) os << "(" << num_.str() << ")";
        else os << num_.str();
        if (frac) {
            os << "/";
            if (den_.term_count() > 1) os << "(" << den_.str() << ")";
            else os << den_.str();
        }
        printed = true;
    }
    if (!snum_.is_zero()) {
        if (printed) os << " + ";
        bool frac = sden_ != Poly(1);
        bool one = snum_ == Poly(1) && !frac;
        if (!one) {
            if (snum_.term_count() > 1 || frac) os << "(" << snum_.str() << ")";
            else os << snum_.str();
            if (frac) {
                os << "/";
                if (sden_.term_count() > 1) os << "(" << sden_.str() << ")";
                else os << sden_.str();
            }
            os << "*";
        }
        os << "sqrt(" << rad_.str() << ")";
    }
    return os.str();
}

} // namespace nal

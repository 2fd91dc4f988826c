#include "nal/poly.hpp"

#include <algorithm>
#include <sstream>

#include "nal/errors.hpp"

namespace nal {

namespace {

int mono_exp(const Mono& m, int var) {
    for (const auto& [v, e] : m)
        if (v == var) return e;
    return 0;
}

int mono_total(const Mono& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i; ++j;
        } else if (a[i].first < b[j].first) {
            r.push_back(a[i++]);
        } else {
            r.push_back(b[j++]);
        }
    }
    while (i < a.size()) r.push_back(a[i++]);
    while (j < b.size()) r.push_back(b[j++]);
    return r;
}

// a / b componentwise; false if some exponent would go negative.
bool mono_div(const Mono& a, const Mono& b, Mono* out) {
    out->clear();
    size_t i = 0;
    for (const auto& [v, e] : b) {
        while (i < a.size() && a[i].first < v) out->push_back(a[i++]);
        if (i >= a.size() || a[i].first != v || a[i].second < e) return false;
        if (a[i].second > e) out->emplace_back(v, a[i].second - e);
        ++i;
    }
    while (i < a.size()) out->push_back(a[i++]);
    return true;
}

} // namespace

bool MonoOrder::operator()(const Mono& a, const Mono& b) const {
    int da = mono_total(a), db = mono_total(b);
    if (da != db) return da < db;
    // Compare non-t variables by ascending id: the earlier variable with a
    // differing exponent decides (larger exponent = larger monomial).
    size_t i = 0, j = 0;
    while (true) {
        while (i < a.size() && a[i].first == 0) ++i;
        while (j < b.size() && b[j].first == 0) ++j;
        bool ea = i >= a.size(), eb = j >= b.size();
        if (ea && eb) break;
        if (ea) return true;   // a has no more non-t vars -> smaller var content
        if (eb) return false;
        if (a[i].first != b[j].first)
            return a[i].first > b[j].first;  // earlier variable present => larger
        if (a[i].second != b[j].second) return a[i].second < b[j].second;
        ++i; ++j;
    }
    return mono_exp(a, 0) < mono_exp(b, 0);
}

Poly Poly::variable(int var, int exp) {
    Poly p;
    if (exp == 0) return Poly(1);
    p.terms_[Mono{{var, exp}}] = GQ(1);
    return p;
}

GQ Poly::constant_value() const {
    if (terms_.empty()) return GQ(0);
    if (!is_constant()) throw Error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

int Poly::degree(int var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_exp(m, var));
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_total(m));
    return d;
}

std::set<int> Poly::vars() const {
    std::set<int> s;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) s.insert(v);
    return s;
}

const std::pair<const Mono, GQ>& Poly::leading() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.rbegin();
}

Poly Poly::coeff_of(int var, int k) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        if (mono_exp(m, var) != k) continue;
        Mono reduced;
        for (const auto& [v, e] : m)
            if (v != var) reduced.emplace_back(v, e);
        r.add_term(reduced, c);
    }
    return r;
}

Poly Poly::derivative(int var) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        int e = mono_exp(m, var);
        if (e == 0) continue;
        Mono reduced;
        for (const auto& [v, k] : m) {
            if (v == var) {
                if (k > 1) reduced.emplace_back(v, k - 1);
            } else {
                reduced.emplace_back(v, k);
            }
        }
        r.add_term(reduced, c * GQ(e));
    }
    return r;
}

int Poly::ord_t() const {
    if (terms_.empty()) return 1 << 28;
    int best = 1 << 28;
    for (const auto& [m, c] : terms_) best = std::min(best, mono_exp(m, 0));
    return best;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

void Poly::add_term(const Mono& m, const GQ& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

Poly Poly::mul_term(const Mono& m, const GQ& c) const {
    Poly r;
    if (c.is_zero()) return r;
    for (const auto& [mm, cc] : terms_) r.terms_[mono_mul(mm, m)] = cc * c;
    return r;
}

Poly Poly::mul_scalar(const GQ& c) const { return mul_term(Mono{}, c); }

Poly Poly::pow(int e) const {
    if (e < 0) throw Error("negative exponent on polynomial");
    Poly acc(1), base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        if (e >>= 1) base *= base;
    }
    return acc;
}

bool operator<(const Poly& a, const Poly& b) {
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    MonoOrder ord;
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ord(ia->first, ib->first)) return true;
        if (ord(ib->first, ia->first)) return false;
        if (ia->second < ib->second) return true;
        if (ib->second < ia->second) return false;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
}

Poly Poly::divexact(const Poly& d) const {
    Poly q;
    if (!divides(d, &q)) throw Error("inexact polynomial division");
    return q;
}

bool Poly::divides(const Poly& d, Poly* quotient) const {
    if (d.is_zero()) throw ZeroDivide("polynomial division by zero");
    Poly rem = *this, q;
    const auto& dl = d.leading();
    while (!rem.is_zero()) {
        const auto& rl = rem.leading();
        Mono qm;
        if (!mono_div(rl.first, dl.first, &qm)) return false;
        GQ qc = rl.second / dl.second;
        q.add_term(qm, qc);
        rem -= d.mul_term(qm, qc);
    }
    *quotient = std::move(q);
    return true;
}

Poly Poly::substitute(const std::map<int, Poly>& bindings) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        Poly term(c);
        for (const auto& [v, e] : m) {
            auto it = bindings.find(v);
            if (it != bindings.end())
                term *= it->second.pow(e);
            else
                term *= Poly::variable(v, e);
        }
        r += term;
    }
    return r;
}

GQ Poly::eval(const std::map<int, GQ>& values) const {
    GQ r(0);
    for (const auto& [m, c] : terms_) {
        GQ term = c;
        for (const auto& [v, e] : m) {
            auto it = values.find(v);
            if (it == values.end())
                throw Error("eval: unbound variable " + symbols::name(v));
            term *= it->second.pow(e);
        }
        r += term;
    }
    return r;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.str();
        bool neg = cs.size() > 0 && cs[0] == '-';
        if (first) {
            if (neg) { os << "-"; cs = cs.substr(1); }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        bool coeff_is_one = (cs == "1");
        bool has_i = cs.find('i') != std::string::npos;
        bool needs_parens = cs.find('+') != std::string::npos ||
                            cs.find('-') != std::string::npos;
        if (m.empty()) {
            if (needs_parens && has_i) os << "(" << cs << ")";
            else os << cs;
            continue;
        }
        if (!coeff_is_one) {
            if (needs_parens) os << "(" << cs << ")";
            else os << cs;
            os << "*";
        }
        bool firstv = true;
        for (const auto& [v, e] : m) {
            if (!firstv) os << "*";
            firstv = false;
            os << symbols::name(v);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace {

Poly monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p.mul_scalar(GQ(1) / p.lc_global());
}

} // namespace

Poly content_wrt(const Poly& p, int var) {
    Poly c;
    for (int k = 0; k <= p.degree(var); ++k) {
        Poly ck = p.coeff_of(var, k);
        if (ck.is_zero()) continue;
        c = poly_gcd(c, ck);
        if (c.is_constant() && !c.is_zero()) return Poly(1);
    }
    return c;
}

Poly pseudo_rem(const Poly& a, const Poly& b, int var) {
    // lb^(delta+1) * a = q*b + r with delta = deg a - deg b (GCL Alg. 2.3)
    int db = b.degree(var);
    if (db == 0) return Poly();
    Poly lb = b.lc(var);
    Poly r = a;
    int e = a.degree(var) - db + 1;
    while (!r.is_zero() && r.degree(var) >= db) {
        int dr = r.degree(var);
        Poly lr = r.coeff_of(var, dr);
        r = r * lb - b * lr * Poly::variable(var, dr - db);
        --e;
    }
    if (e > 0) r = r * lb.pow(e);
    return r;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly(1);

    std::set<int> va = a.vars(), vb = b.vars();
    int var = -1;
    for (int v : va) var = std::max(var, v);
    for (int v : vb) var = std::max(var, v);

    int da = a.degree(var), db = b.degree(var);
    if (da == 0) return poly_gcd(a, content_wrt(b, var));
    if (db == 0) return poly_gcd(content_wrt(a, var), b);

    Poly ca = content_wrt(a, var), cb = content_wrt(b, var);
    Poly c = poly_gcd(ca, cb);
    Poly A = a.divexact(ca), B = b.divexact(cb);
    if (A.degree(var) < B.degree(var)) std::swap(A, B);

    // Subresultant polynomial remainder sequence.
    Poly g(1), h(1);
    while (true) {
        int delta = A.degree(var) - B.degree(var);
        Poly R = pseudo_rem(A, B, var);
        if (R.is_zero()) break;
        if (R.degree(var) == 0) { B = Poly(1); break; }
        A = B;
        Poly divisor = g * h.pow(delta);
        B = R.divexact(divisor);
        g = A.lc(var);
        if (delta > 0) h = g.pow(delta).divexact(h.pow(delta - 1));
    }
    if (B.is_constant()) return monic(c);
    Poly pp = B.divexact(content_wrt(B, var));
    return monic(c * pp);
}

Poly poly_det_bareiss(std::vector<std::vector<Poly>> m) {
    size_t n = m.size();
    if (n == 0) return Poly(1);
    Poly denom(1);
    GQ sign(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return Poly();
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num.divexact(denom);
            }
            m[i][k] = Poly();
        }
        denom = m[k][k];
    }
    return m[n - 1][n - 1].mul_scalar(sign);
}

Poly resultant(const Poly& a, const Poly& b, int var) {
    int m = a.degree(var), n = b.degree(var);
    if (a.is_zero() || b.is_zero()) return Poly();
    if (m == 0) return a.pow(n);
    if (n == 0) return b.pow(m);
    std::vector<std::vector<Poly>> s(m + n, std::vector<Poly>(m + n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k)
            s[i][i + (m - k)] = a.coeff_of(var, k);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k)
            s[n + i][i + (n - k)] = b.coeff_of(var, k);
    return poly_det_bareiss(std::move(s));
}

void extract_square(const Poly& p, Poly* s, Poly* q) {
    *s = Poly(1);
    *q = p;
    if (p.is_zero() || p.is_constant()) return;

    std::set<int> vs = p.vars();
    int var = *vs.rbegin();

    Poly cont = content_wrt(p, var);
    Poly pp = p.divexact(cont);
    Poly cs, cq;
    extract_square(cont, &cs, &cq);

    Poly sq(1), rest = pp;
    while (true) {
        if (rest.is_constant()) break;
        if (rest.degree(var) == 0) {
            // remaining factors live in lower variables
            Poly s2, q2;
            extract_square(rest, &s2, &q2);
            sq = sq * s2;
            rest = q2;
            break;
        }
        Poly g = poly_gcd(rest, rest.derivative(var));
        if (g.degree(var) == 0 && g.is_constant()) break;
        Poly rad = rest.divexact(g);
        Poly h = poly_gcd(g, rad);
        if (h.is_constant()) break;
        rest = rest.divexact(h).divexact(h);
        sq = sq * h;
    }
    *s = cs * sq;
    *q = cq * rest;
}

} // namespace nal

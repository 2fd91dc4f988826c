#include "nal/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "nal/errors.hpp"

namespace nal {

std::vector<CD> NumericTensor::multiply(const std::vector<CD>& x,
                                        const std::vector<CD>& y) const {
    std::vector<CD> r(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CD xy = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
            if (xy == CD(0.0, 0.0)) continue;
            for (int k = 0; k < n; ++k) r[static_cast<size_t>(k)] += xy * at(i, j, k);
        }
    return r;
}

NumericTensor to_numeric(const StructureTensor& a, const std::map<int, CD>& values,
                         int branch) {
    NumericTensor r;
    r.n = a.dim();
    r.c.resize(static_cast<size_t>(r.n) * r.n * r.n);
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j)
            for (int k = 0; k < r.n; ++k)
                r.at(i, j, k) = a.at(i, j, k).eval_numeric(values, branch);
    return r;
}

namespace {

double residual_norm2(const NumericTensor& a, const NumericTensor& b,
                      const std::vector<CD>& p) {
    int n = a.n;
    double acc = 0;
    std::vector<std::vector<CD>> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        rows[static_cast<size_t>(i)].assign(p.begin() + static_cast<long>(i) * n,
                                            p.begin() + static_cast<long>(i + 1) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<CD> lhs = a.multiply(rows[static_cast<size_t>(i)],
                                             rows[static_cast<size_t>(j)]);
            for (int k = 0; k < n; ++k)
                for (int q = 0; q < n; ++q)
                    lhs[static_cast<size_t>(q)] -=
                        b.at(i, j, k) * rows[static_cast<size_t>(k)][static_cast<size_t>(q)];
            for (int q = 0; q < n; ++q) {
                double m = std::abs(lhs[static_cast<size_t>(q)]);
                acc += m * m;
            }
        }
    return acc;
}

void residual_vec(const NumericTensor& a, const NumericTensor& b,
                  const std::vector<double>& x, std::vector<double>* f) {
    int n = a.n;
    std::vector<CD> p(static_cast<size_t>(n) * n);
    for (size_t i = 0; i < p.size(); ++i) p[i] = CD(x[2 * i], x[2 * i + 1]);
    std::vector<std::vector<CD>> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        rows[static_cast<size_t>(i)].assign(p.begin() + static_cast<long>(i) * n,
                                            p.begin() + static_cast<long>(i + 1) * n);
    f->clear();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<CD> lhs = a.multiply(rows[static_cast<size_t>(i)],
                                             rows[static_cast<size_t>(j)]);
            for (int k = 0; k < n; ++k)
                for (int q = 0; q < n; ++q)
                    lhs[static_cast<size_t>(q)] -=
                        b.at(i, j, k) * rows[static_cast<size_t>(k)][static_cast<size_t>(q)];
            for (int q = 0; q < n; ++q) {
                f->push_back(lhs[static_cast<size_t>(q)].real());
                f->push_back(lhs[static_cast<size_t>(q)].imag());
            }
        }
}

CD det3(const std::vector<CD>& p, int n) {
    if (n == 1) return p[0];
    if (n == 2) return p[0] * p[3] - p[1] * p[2];
    if (n == 3) {
        auto a = [&p](int i, int j) { return p[static_cast<size_t>(i) * 3 + j]; };
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    }
    throw Error("det for n > 3 not needed");
}

// Solve (JtJ + lambda I) d = -Jt f for small dense systems.
bool solve_normal(std::vector<std::vector<double>> m, std::vector<double> rhs,
                  std::vector<double>* out) {
    size_t n = m.size();
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        double best = std::fabs(m[k][k]);
        for (size_t i = k + 1; i < n; ++i)
            if (std::fabs(m[i][k]) > best) { best = std::fabs(m[i][k]); piv = i; }
        if (best < 1e-14) return false;
        std::swap(m[k], m[piv]);
        std::swap(rhs[k], rhs[piv]);
        for (size_t i = k + 1; i < n; ++i) {
            double f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    out->assign(n, 0.0);
    for (size_t k = n; k-- > 0;) {
        double acc = rhs[k];
        for (size_t j = k + 1; j < n; ++j) acc -= m[k][j] * (*out)[j];
        (*out)[k] = acc / m[k][k];
    }
    return true;
}

} // namespace

namespace {

// Damped Gauss-Newton over the unfrozen coordinates; returns the final
// squared residual.
double gauss_newton(const NumericTensor& a, const NumericTensor& b,
                    std::vector<double>* xio, const std::vector<bool>& frozen,
                    int iterations) {
    std::vector<double>& x = *xio;
    std::vector<size_t> free_idx;
    for (size_t v = 0; v < x.size(); ++v)
        if (!frozen[v]) free_idx.push_back(v);
    double lambda = 1e-3;
    std::vector<double> f;
    residual_vec(a, b, x, &f);
    double err = 0;
    for (double v : f) err += v * v;
    if (free_idx.empty()) return err;
    size_t nv = free_idx.size();
    for (int it = 0; it < iterations && err > 1e-28; ++it) {
        size_t m = f.size();
        std::vector<std::vector<double>> jt(nv, std::vector<double>(m));
        const double h = 1e-7;
        for (size_t v = 0; v < nv; ++v) {
            std::vector<double> xp = x;
            xp[free_idx[v]] += h;
            std::vector<double> fp;
            residual_vec(a, b, xp, &fp);
            for (size_t r = 0; r < m; ++r) jt[v][r] = (fp[r] - f[r]) / h;
        }
        std::vector<std::vector<double>> jtj(nv, std::vector<double>(nv, 0.0));
        std::vector<double> jtf(nv, 0.0);
        for (size_t u = 0; u < nv; ++u) {
            for (size_t v = u; v < nv; ++v) {
                double acc = 0;
                for (size_t r = 0; r < m; ++r) acc += jt[u][r] * jt[v][r];
                jtj[u][v] = jtj[v][u] = acc;
            }
            double acc = 0;
            for (size_t r = 0; r < m; ++r) acc += jt[u][r] * f[r];
            jtf[u] = -acc;
        }
        bool improved = false;
        for (int tries = 0; tries < 8; ++tries) {
            auto damped = jtj;
            for (size_t u = 0; u < nv; ++u) damped[u][u] += lambda;
            std::vector<double> d;
            if (solve_normal(damped, jtf, &d)) {
                std::vector<double> xn = x;
                for (size_t u = 0; u < nv; ++u) xn[free_idx[u]] += d[u];
                std::vector<double> fn;
                residual_vec(a, b, xn, &fn);
                double errn = 0;
                for (double v : fn) errn += v * v;
                if (errn < err) {
                    x = std::move(xn);
                    f = std::move(fn);
                    err = errn;
                    lambda = std::max(lambda * 0.3, 1e-12);
                    improved = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if (!improved) break;
    }
    return err;
}

double residual_of(const NumericTensor& a, const NumericTensor& b,
                   const std::vector<double>& x) {
    std::vector<double> f;
    residual_vec(a, b, x, &f);
    double err = 0;
    for (double v : f) err += v * v;
    return err;
}

// Best rational approximation with den <= max_den, unconditionally.
mpq_class best_rational(double x, long max_den) {
    mpq_class out(0);
    if (rationalize(x, max_den, 1e18, &out)) return out;
    return mpq_class(0);
}

// Phase 1: greedily freeze entries at small rationals (denominator <=
// max_den) while the automorphism gauge freedom absorbs the change.
// Phase 2: the remaining coordinates are determined rationals; recover them
// by continued fractions.  Exact verification downstream has the final word.
bool polish_to_rational(const NumericTensor& a, const NumericTensor& b,
                        std::vector<double> x, long max_den,
                        std::vector<CD>* out) {
    size_t entries = x.size() / 2;
    std::vector<bool> frozen(x.size(), false);
    // phase 1: prefer simple values (small denominators first) so that the
    // determined coordinates stay recoverable
    while (true) {
        struct Cand { size_t e; long den; double dist; mpq_class re, im; };
        std::vector<Cand> cands;
        for (size_t e = 0; e < entries; ++e) {
            if (frozen[2 * e]) continue;
            for (long den : {1L, 2L, 4L, 8L, 64L}) {
                Cand c{e, den, 0.0, best_rational(x[2 * e], den),
                       best_rational(x[2 * e + 1], den)};
                c.dist = std::hypot(x[2 * e] - c.re.get_d(),
                                    x[2 * e + 1] - c.im.get_d());
                if (den > 1 && !cands.empty() && cands.back().e == e &&
                    cands.back().re == c.re && cands.back().im == c.im)
                    continue;
                if (c.dist < 0.6) cands.push_back(std::move(c));
            }
        }
        if (cands.empty()) break;
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) {
            if (l.den != r.den) return l.den < r.den;
            return l.dist < r.dist;
        });
        bool advanced = false;
        for (const Cand& c : cands) {
            std::vector<double> xt = x;
            xt[2 * c.e] = c.re.get_d();
            xt[2 * c.e + 1] = c.im.get_d();
            std::vector<bool> ft = frozen;
            ft[2 * c.e] = ft[2 * c.e + 1] = true;
            double err = gauss_newton(a, b, &xt, ft, 160);
            if (err <= 1e-26) {
                std::vector<CD> pt(entries);
                for (size_t e = 0; e < entries; ++e)
                    pt[e] = CD(xt[2 * e], xt[2 * e + 1]);
                if (std::abs(det3(pt, a.n)) < 1e-6) continue;  // keep invertible
                x = std::move(xt);
                frozen = std::move(ft);
                advanced = true;
                break;
            }
        }
        if (!advanced) break;  // gauge freedom exhausted
    }
    // sharpen the determined coordinates before recovery
    double final_err = gauss_newton(a, b, &x, frozen, 200);
    if (final_err > 1e-24) return false;
    // phase 2: continued-fraction recovery of the determined coordinates
    std::vector<CD> p(entries);
    for (size_t e = 0; e < entries; ++e) {
        if (frozen[2 * e]) {
            p[e] = CD(x[2 * e], x[2 * e + 1]);
            continue;
        }
        bool got = false;
        for (long den : {64L, 4096L, 1000000L}) {
            mpq_class re, im;
            if (rationalize(x[2 * e], den, 64.0 / (2.0 * den * den), &re) &&
                rationalize(x[2 * e + 1], den, 64.0 / (2.0 * den * den), &im)) {
                std::vector<double> xt = x;
                xt[2 * e] = re.get_d();
                xt[2 * e + 1] = im.get_d();
                double err = residual_of(a, b, xt);
                if (err <= 1e-22) {
                    x = std::move(xt);
                    got = true;
                    break;
                }
            }
        }
        if (!got) return false;
        p[e] = CD(x[2 * e], x[2 * e + 1]);
    }
    if (std::abs(det3(p, a.n)) < 1e-6) return false;
    *out = std::move(p);
    return true;
}

} // namespace

std::vector<std::vector<CD>> numeric_iso_candidates(const NumericTensor& a,
                                                    const NumericTensor& b,
                                                    std::uint64_t seed, int starts,
                                                    int iterations) {
    int n = a.n;
    size_t nvars = 2 * static_cast<size_t>(n) * n;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<std::vector<CD>> found;

    for (int s = 0; s < starts; ++s) {
        std::vector<double> x(nvars);
        for (double& v : x) v = dist(rng);
        std::vector<bool> frozen(nvars, false);
        double err = gauss_newton(a, b, &x, frozen, iterations);
        if (std::getenv("NAL_SEARCH_DEBUG"))
            std::fprintf(stderr, "start %d: err %.3e\n", s, err);
        if (err > 1e-20) continue;
        {
            std::vector<CD> p(static_cast<size_t>(n) * n);
            for (size_t i = 0; i < p.size(); ++i) p[i] = CD(x[2 * i], x[2 * i + 1]);
            if (std::abs(det3(p, n)) < 1e-6) continue;
        }
        std::vector<CD> polished;
        if (polish_to_rational(a, b, x, 64, &polished))
            found.push_back(std::move(polished));
    }
    return found;
}

bool rationalize(double x, long max_den, double tol, mpq_class* out) {
    if (!std::isfinite(x)) return false;
    double target = x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 1e17 || fl < -1e17) return false;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = v - static_cast<double>(a);
        if (std::fabs(rem) < 1e-12) break;
        v = 1.0 / rem;
    }
    if (q1 == 0) return false;
    mpq_class r(p1, q1);
    r.canonicalize();
    if (std::fabs(r.get_d() - target) > tol) return false;
    *out = r;
    return true;
}

bool rationalize_gaussian(CD z, long max_den, double tol, GQ* out) {
    mpq_class re, im;
    if (!rationalize(z.real(), max_den, tol, &re)) return false;
    if (!rationalize(z.imag(), max_den, tol, &im)) return false;
    *out = GQ(re, im);
    return true;
}

} // namespace nal

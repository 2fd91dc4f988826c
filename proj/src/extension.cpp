#include "nal/extension.hpp"

#include <mutex>
#include <sstream>

#include "nal/errors.hpp"

namespace nal {

bool CocycleTriple::is_skew() const {
    for (const Matrix& b : forms) {
        for (int i = 0; i < b.rows(); ++i) {
            if (!b.at(i, i).is_zero()) return false;
            for (int j = i + 1; j < b.cols(); ++j)
                if (!(b.at(i, j) + b.at(j, i)).is_zero()) return false;
        }
    }
    return true;
}

std::vector<Scalar> CocycleTriple::eval(const std::vector<Scalar>& x,
                                        const std::vector<Scalar>& y) const {
    int n = dim();
    std::vector<Scalar> r(static_cast<size_t>(n));
    for (int f = 0; f < n; ++f) {
        const Matrix& b = forms[static_cast<size_t>(f)];
        Scalar acc;
        for (int i = 0; i < n; ++i) {
            if (x[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (y[static_cast<size_t>(j)].is_zero() || b.at(i, j).is_zero()) continue;
                acc += x[static_cast<size_t>(i)] * b.at(i, j) * y[static_cast<size_t>(j)];
            }
        }
        r[static_cast<size_t>(f)] = acc;
    }
    return r;
}

std::string CocycleTriple::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t f = 0; f < forms.size(); ++f) {
        if (f) os << ", ";
        const Matrix& b = forms[f];
        bool any = false;
        std::ostringstream part;
        for (int i = 0; i < b.rows(); ++i)
            for (int j = i + 1; j < b.cols(); ++j) {
                if (b.at(i, j).is_zero()) continue;
                if (any) part << " + ";
                if (b.at(i, j).is_one())
                    part << "D" << (i + 1) << (j + 1);
                else
                    part << "(" << b.at(i, j).str() << ")*D" << (i + 1) << (j + 1);
                any = true;
            }
        os << (any ? part.str() : "0");
    }
    os << ")";
    return os.str();
}

Matrix delta_form(int i, int j, int n) {
    Matrix m(n, n);
    m.at(i - 1, j - 1) = Scalar(1);
    m.at(j - 1, i - 1) = Scalar(-1);
    return m;
}

Matrix nabla_form(int i, int j, int n) {
    Matrix m(n, n);
    m.at(i - 1, j - 1) = m.at(i - 1, j - 1) + Scalar(1);
    m.at(j - 1, i - 1) = m.at(j - 1, i - 1) + Scalar(1);
    return m;
}

CocycleTriple skew_triple(const StructureTensor& a) {
    int n = a.dim();
    CocycleTriple theta;
    Scalar half = Scalar(1) / Scalar(2);
    for (int k = 0; k < n; ++k) {
        Matrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                b.at(i, j) = (a.at(i, j, k) - a.at(j, i, k)) * half;
        theta.forms.push_back(std::move(b));
    }
    return theta;
}

namespace {

int cocycle_var(int slot, int coord) {
    static std::mutex mu;
    static std::vector<std::vector<int>> pool;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(pool.size()) <= slot) pool.emplace_back();
    auto& row = pool[static_cast<size_t>(slot)];
    while (static_cast<int>(row.size()) <= coord)
        row.push_back(symbols::fresh("z" + std::to_string(slot) + "_"));
    return row[static_cast<size_t>(coord)];
}

std::vector<Scalar> generic_vec(int slot, int n) {
    std::vector<Scalar> v(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        v[static_cast<size_t>(k)] = Scalar::variable(cocycle_var(slot, k));
    return v;
}

} // namespace

CocycleCheck is_cocycle(const StructureTensor& aplus, const CocycleTriple& theta) {
    int n = aplus.dim();
    if (theta.dim() != n) throw DimensionMismatch("cocycle triple dimension");
    CocycleCheck result;
    if (!theta.is_skew()) {
        result.verified = false;
        result.detail = "theta is not skew-symmetric";
        return result;
    }
    auto x = generic_vec(0, n), y = generic_vec(1, n), z = generic_vec(2, n);
    auto mul = [&aplus](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
        return aplus.multiply(u, v);
    };
    auto th = [&theta](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
        return theta.eval(u, v);
    };
    auto add = [](std::vector<Scalar> a, const std::vector<Scalar>& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };
    auto sub = [](std::vector<Scalar> a, const std::vector<Scalar>& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        return a;
    };
    auto zero = [](const std::vector<Scalar>& a) {
        for (const Scalar& s : a)
            if (!s.is_zero()) return false;
        return true;
    };

    // (x.y).z + theta(x,y).z + theta(x.y,z) + theta(theta(x,y),z)
    //   = same with y <-> z   (right compatibility)
    auto rhs_of = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v,
                      const std::vector<Scalar>& w) {
        auto uv = mul(u, v);
        auto tuv = th(u, v);
        return add(add(mul(uv, w), mul(tuv, w)), add(th(uv, w), th(tuv, w)));
    };
    auto cond1 = sub(rhs_of(x, y, z), rhs_of(x, z, y));
    if (!zero(cond1)) {
        result.verified = false;
        result.condition = 1;
        result.detail = "right compatibility fails";
        return result;
    }
    // x.(y.z) + x.theta(y,z) + theta(x, y.z) + theta(x, theta(y,z))
    //   = same with x <-> y   (left compatibility)
    auto lhs_of = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v,
                      const std::vector<Scalar>& w) {
        auto vw = mul(v, w);
        auto tvw = th(v, w);
        return add(add(mul(u, vw), mul(u, tvw)), add(th(u, vw), th(u, tvw)));
    };
    auto cond2 = sub(lhs_of(x, y, z), lhs_of(y, x, z));
    if (!zero(cond2)) {
        result.verified = false;
        result.condition = 2;
        result.detail = "left compatibility fails";
        return result;
    }
    return result;
}

StructureTensor extend(const StructureTensor& aplus, const CocycleTriple& theta) {
    CocycleCheck chk = is_cocycle(aplus, theta);
    if (!chk.verified) throw NotACocycle(chk.detail);
    int n = aplus.dim();
    StructureTensor r = aplus;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                r.at(i, j, k) += theta.forms[static_cast<size_t>(k)].at(i, j);
    return r;
}

CocycleTriple act(const CocycleTriple& theta, const Matrix& basis_change,
                  Constraints* conditions) {
    int n = theta.dim();
    Matrix m = basis_change.transpose();       // column-convention matrix of phi
    Matrix minv = m.inverse(conditions);
    Matrix mt = basis_change;                  // M^T
    CocycleTriple out;
    for (int i = 0; i < n; ++i) {
        Matrix acc(n, n);
        for (int j = 0; j < n; ++j) {
            const Scalar& bij = minv.at(i, j);
            if (bij.is_zero()) continue;
            acc = acc + (mt * theta.forms[static_cast<size_t>(j)] * m).mul_scalar(bij);
        }
        out.forms.push_back(std::move(acc));
    }
    return out;
}

} // namespace nal

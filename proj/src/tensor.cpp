#include "nal/tensor.hpp"

#include <sstream>

#include "nal/errors.hpp"

namespace nal {

std::vector<Scalar> StructureTensor::multiply(const std::vector<Scalar>& x,
                                              const std::vector<Scalar>& y) const {
    if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
        throw DimensionMismatch("vector length does not match algebra dimension");
    std::vector<Scalar> r(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        if (x[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
            if (y[static_cast<size_t>(j)].is_zero()) continue;
            Scalar xy = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
            for (int k = 0; k < n_; ++k) {
                const Scalar& c = at(i, j, k);
                if (!c.is_zero()) r[static_cast<size_t>(k)] += xy * c;
            }
        }
    }
    return r;
}

StructureTensor StructureTensor::change_basis(const Matrix& p,
                                              Constraints* conditions) const {
    if (p.rows() != n_ || p.cols() != n_)
        throw DimensionMismatch("basis change matrix size");
    Matrix pinv = p.inverse(conditions);
    StructureTensor r(n_);
    r.params_ = params_;
    r.constraints_ = constraints_;
    for (int i = 0; i < n_; ++i) {
        std::vector<Scalar> pi = p.row(i);
        for (int j = 0; j < n_; ++j) {
            std::vector<Scalar> prod = multiply(pi, p.row(j));
            std::vector<Scalar> coords = Matrix::vec_mat(prod, pinv);
            for (int k = 0; k < n_; ++k) r.at(i, j, k) = coords[static_cast<size_t>(k)];
        }
    }
    return r;
}

StructureTensor StructureTensor::jordan_product() const {
    StructureTensor r(n_);
    r.params_ = params_;
    r.constraints_ = constraints_;
    Scalar half = Scalar(1) / Scalar(2);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                r.at(i, j, k) = (at(i, j, k) + at(j, i, k)) * half;
    return r;
}

StructureTensor StructureTensor::opposite() const {
    StructureTensor r(n_);
    r.params_ = params_;
    r.constraints_ = constraints_;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                r.at(i, j, k) = at(j, i, k);
    return r;
}

StructureTensor StructureTensor::skew_part() const {
    StructureTensor r(n_);
    r.params_ = params_;
    r.constraints_ = constraints_;
    Scalar half = Scalar(1) / Scalar(2);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                r.at(i, j, k) = (at(i, j, k) - at(j, i, k)) * half;
    return r;
}

StructureTensor StructureTensor::substitute(const std::map<int, Scalar>& bindings) const {
    constraints_.check_values([&] {
        std::map<int, GQ> vals;
        for (const auto& [v, s] : bindings)
            if (s.is_constant()) vals[v] = s.constant_value();
        return vals;
    }());
    StructureTensor r(n_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i].substitute(bindings);
    // carry over parameters that remain unbound, plus new ones introduced
    std::set<int> vars;
    for (const Scalar& s : r.c_)
        for (int v : s.vars())
            if (v != symbols::t()) vars.insert(v);
    for (int v : params_)
        if (!bindings.count(v) && !vars.count(v)) vars.insert(v);
    r.params_.assign(vars.begin(), vars.end());
    for (const Poly& con : constraints_.nonzero()) {
        bool touched = false;
        for (int v : con.vars())
            if (bindings.count(v)) { touched = true; break; }
        if (!touched) r.constraints_.add(con);
    }
    return r;
}

bool StructureTensor::is_zero() const {
    for (const Scalar& s : c_)
        if (!s.is_zero()) return false;
    return true;
}

bool operator==(const StructureTensor& a, const StructureTensor& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
}

std::string StructureTensor::str() const { return table_str(); }

std::string StructureTensor::table_str() const {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            bool row = false;
            std::ostringstream rhs;
            for (int k = 0; k < n_; ++k) {
                const Scalar& c = at(i, j, k);
                if (c.is_zero()) continue;
                if (row) rhs << " + ";
                if (c.is_one()) rhs << "e" << (k + 1);
                else rhs << "(" << c.str() << ")*e" << (k + 1);
                row = true;
            }
            if (row) {
                if (any) os << " ; ";
                os << "e" << (i + 1) << "e" << (j + 1) << " = " << rhs.str();
                any = true;
            }
        }
    if (!any) return "(zero algebra)";
    return os.str();
}

} // namespace nal

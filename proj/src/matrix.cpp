#include "nal/matrix.hpp"

#include <sstream>

#include "nal/errors.hpp"

namespace nal {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::diagonal(const std::vector<Scalar>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i)
        m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw DimensionMismatch();
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
}

std::vector<Scalar> Matrix::row(int i) const {
    std::vector<Scalar> r(static_cast<size_t>(cols_));
    for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(j)] = at(i, j);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            m.at(j, i) = at(i, j);
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                if (b.at(k, j).is_zero()) continue;
                r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch();
    Matrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch();
    Matrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
}

Matrix Matrix::mul_scalar(const Scalar& s) const {
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::vector<Scalar> Matrix::vec_mat(const std::vector<Scalar>& v, const Matrix& m) {
    if (static_cast<int>(v.size()) != m.rows()) throw DimensionMismatch("vec*mat");
    std::vector<Scalar> r(static_cast<size_t>(m.cols()));
    for (int i = 0; i < m.rows(); ++i) {
        if (v[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < m.cols(); ++j)
            r[static_cast<size_t>(j)] += v[static_cast<size_t>(i)] * m.at(i, j);
    }
    return r;
}

namespace {

// Prefer pivots whose nonzero-ness needs no assumption: constants first,
// then monomial numerators, then anything nonzero.
int pivot_quality(const Scalar& s) {
    if (s.is_zero()) return -1;
    if (s.has_sqrt()) return 1;
    if (s.num().is_constant()) return 3;
    if (s.num().term_count() == 1) return 2;
    return 1;
}

void record_pivot(const Scalar& s, Constraints* conditions) {
    if (conditions == nullptr) return;
    if (s.has_sqrt()) return;  // radicand nonzero by construction
    const Poly& n = s.num();
    if (!n.is_constant() && n.term_count() > 1) conditions->add(n);
}

} // namespace

Scalar Matrix::det() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of non-square matrix");
    Matrix m = *this;
    int n = rows_;
    Scalar result(1);
    for (int k = 0; k < n; ++k) {
        int best = -1, bestq = -1;
        for (int i = k; i < n; ++i) {
            int q = pivot_quality(m.at(i, k));
            if (q > bestq) { bestq = q; best = i; }
        }
        if (bestq <= -1 || m.at(best, k).is_zero()) return Scalar(0);
        if (best != k) {
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(best, j));
            result = -result;
        }
        result *= m.at(k, k);
        Scalar inv = Scalar(1) / m.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (m.at(i, k).is_zero()) continue;
            Scalar f = m.at(i, k) * inv;
            for (int j = k; j < n; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(k, j);
        }
    }
    return result;
}

Matrix Matrix::inverse(Constraints* conditions) const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    int n = rows_;
    Matrix m = *this;
    Matrix inv = Matrix::identity(n);
    for (int k = 0; k < n; ++k) {
        int best = -1, bestq = -1;
        for (int i = k; i < n; ++i) {
            int q = pivot_quality(m.at(i, k));
            if (q > bestq) { bestq = q; best = i; }
        }
        if (best < 0 || m.at(best, k).is_zero())
            throw SingularMatrix("matrix is singular (column " + std::to_string(k + 1) + ")");
        if (best != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(k, j), m.at(best, j));
                std::swap(inv.at(k, j), inv.at(best, j));
            }
        }
        record_pivot(m.at(k, k), conditions);
        Scalar pivinv = Scalar(1) / m.at(k, k);
        for (int j = 0; j < n; ++j) {
            m.at(k, j) = m.at(k, j) * pivinv;
            inv.at(k, j) = inv.at(k, j) * pivinv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || m.at(i, k).is_zero()) continue;
            Scalar f = m.at(i, k);
            for (int j = 0; j < n; ++j) {
                m.at(i, j) = m.at(i, j) - f * m.at(k, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(k, j);
            }
        }
    }
    return inv;
}

Matrix Matrix::rref(std::vector<int>* pivots, Constraints* conditions) const {
    Matrix m = *this;
    if (pivots) pivots->clear();
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int best = -1, bestq = -1;
        for (int i = r; i < rows_; ++i) {
            int q = pivot_quality(m.at(i, c));
            if (q > bestq) { bestq = q; best = i; }
        }
        if (best < 0 || m.at(best, c).is_zero()) continue;
        if (best != r)
            for (int j = 0; j < cols_; ++j) std::swap(m.at(r, j), m.at(best, j));
        record_pivot(m.at(r, c), conditions);
        Scalar pivinv = Scalar(1) / m.at(r, c);
        for (int j = 0; j < cols_; ++j) m.at(r, j) = m.at(r, j) * pivinv;
        for (int i = 0; i < rows_; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (int j = 0; j < cols_; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return m;
}

int Matrix::rank(Constraints* conditions) const {
    std::vector<int> piv;
    rref(&piv, conditions);
    return static_cast<int>(piv.size());
}

std::vector<std::vector<Scalar>> Matrix::nullspace(Constraints* conditions) const {
    std::vector<int> piv;
    Matrix r = rref(&piv, conditions);
    std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
    for (int c : piv) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<Scalar> v(static_cast<size_t>(cols_));
        v[static_cast<size_t>(free)] = Scalar(1);
        for (size_t pr = 0; pr < piv.size(); ++pr)
            v[static_cast<size_t>(piv[pr])] = -r.at(static_cast<int>(pr), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Scalar> solve_row(const std::vector<Scalar>& v, const Matrix& minv) {
    return Matrix::vec_mat(v, minv);
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        os << "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
        os << "]";
        if (i + 1 < rows_) os << "\n";
    }
    os << "]";
    return os.str();
}

} // namespace nal

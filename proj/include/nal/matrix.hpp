#ifndef NAL_MATRIX_HPP
#define NAL_MATRIX_HPP

#include <functional>
#include <vector>

#include "nal/scalar.hpp"

namespace nal {

/// Dense matrix over the exact scalar field.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {}

    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<Scalar>& d);
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<Scalar> row(int i) const;
    Matrix transpose() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix mul_scalar(const Scalar& s) const;
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    /// Row vector times matrix.
    static std::vector<Scalar> vec_mat(const std::vector<Scalar>& v, const Matrix& m);

    Scalar det() const;

    /// Exact inverse.  Pivot numerators that are parameter polynomials are
    /// recorded into `conditions` (they are assumed nonzero generically).
    /// Throws SingularMatrix when the matrix is singular as a rational-
    /// function matrix.
    Matrix inverse(Constraints* conditions = nullptr) const;

    /// Reduced row echelon form; returns pivot column indices.
    /// Records parameter-dependent pivots into conditions.
    Matrix rref(std::vector<int>* pivots = nullptr,
                Constraints* conditions = nullptr) const;

    int rank(Constraints* conditions = nullptr) const;

    /// Basis of the right nullspace {x : M x = 0}, as columns returned in
    /// row-vector form (each entry of the result is one basis vector).
    std::vector<std::vector<Scalar>> nullspace(Constraints* conditions = nullptr) const;

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Scalar> a_;
};

/// Solve x * M = v for a row vector x given invertible M (x = v M^{-1}).
std::vector<Scalar> solve_row(const std::vector<Scalar>& v, const Matrix& minv);

} // namespace nal

#endif

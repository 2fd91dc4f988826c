#ifndef NAL_TENSOR_HPP
#define NAL_TENSOR_HPP

#include <string>
#include <vector>

#include "nal/matrix.hpp"

namespace nal {

/// Structure-constant tensor of an n-dimensional algebra:
/// e_i * e_j = sum_k c[i][j][k] e_k.
class StructureTensor {
public:
    StructureTensor() : n_(0) {}
    explicit StructureTensor(int n)
        : n_(n), c_(static_cast<size_t>(n) * n * n) {}

    static StructureTensor zero(int n) { return StructureTensor(n); }

    int dim() const { return n_; }

    Scalar& at(int i, int j, int k) {
        return c_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
    }
    const Scalar& at(int i, int j, int k) const {
        return c_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
    }

    std::vector<int>& params() { return params_; }
    const std::vector<int>& params() const { return params_; }
    Constraints& constraints() { return constraints_; }
    const Constraints& constraints() const { return constraints_; }

    /// Bilinear product of coordinate vectors.
    std::vector<Scalar> multiply(const std::vector<Scalar>& x,
                                 const std::vector<Scalar>& y) const;

    /// Rows of P hold the new basis vectors in old coordinates.
    /// change_basis(A, identity) == A; right action:
    /// change_basis(change_basis(A,P),Q) == change_basis(A, Q*P).
    StructureTensor change_basis(const Matrix& p, Constraints* conditions = nullptr) const;

    /// x o y = (xy + yx)/2 on the same space.
    StructureTensor jordan_product() const;
    /// c^op[i][j][k] = c[j][i][k].
    StructureTensor opposite() const;
    /// Skew part (xy - yx)/2; the theta of a bicommutative extension.
    StructureTensor skew_part() const;

    StructureTensor substitute(const std::map<int, Scalar>& bindings) const;

    bool is_zero() const;

    friend bool operator==(const StructureTensor& a, const StructureTensor& b);
    friend bool operator!=(const StructureTensor& a, const StructureTensor& b) {
        return !(a == b);
    }

    std::string str() const;
    /// Nonzero products in the e_i e_j = ... table form.
    std::string table_str() const;

private:
    int n_;
    std::vector<Scalar> c_;
    std::vector<int> params_;
    Constraints constraints_;
};

} // namespace nal

#endif

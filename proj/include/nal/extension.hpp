#ifndef NAL_EXTENSION_HPP
#define NAL_EXTENSION_HPP

#include <string>
#include <vector>

#include "nal/tensor.hpp"

namespace nal {

/// theta = (B_1,...,B_n): theta(x,y) = sum_i (x^T B_i y) e_i, all B_i skew
/// for Z^2 use.
struct CocycleTriple {
    std::vector<Matrix> forms;

    int dim() const { return static_cast<int>(forms.size()); }
    bool is_skew() const;
    std::vector<Scalar> eval(const std::vector<Scalar>& x,
                             const std::vector<Scalar>& y) const;
    bool operator==(const CocycleTriple& o) const {
        if (forms.size() != o.forms.size()) return false;
        for (size_t i = 0; i < forms.size(); ++i)
            if (forms[i] != o.forms[i]) return false;
        return true;
    }
    std::string str() const;
};

/// The skew bilinear form Delta_ij (+1 at (i,j), -1 at (j,i)); 1-based.
Matrix delta_form(int i, int j, int n);
/// The symmetric form Nabla_ij (+1 at (i,j) and (j,i)); 1-based.
Matrix nabla_form(int i, int j, int n);

/// theta extracted from a tensor's skew part.
CocycleTriple skew_triple(const StructureTensor& a);

struct CocycleCheck {
    bool verified = true;
    int condition = 0;              // 1 = right compatibility, 2 = left
    std::string detail;
};

/// Both Z^2 compatibility conditions, evaluated with generic symbolic
/// vectors.  Quadratic in theta, so evaluation only.
CocycleCheck is_cocycle(const StructureTensor& aplus, const CocycleTriple& theta);

/// x *_theta y = x y + theta(x,y); requires is_cocycle.
StructureTensor extend(const StructureTensor& aplus, const CocycleTriple& theta);

/// Aut action: with M the column-convention matrix of phi (M = P^T for a
/// row-convention BasisChange P), B'_i = sum_j (M^{-1})_{ij} M^T B_j M.
CocycleTriple act(const CocycleTriple& theta, const Matrix& basis_change,
                  Constraints* conditions = nullptr);

} // namespace nal

#endif

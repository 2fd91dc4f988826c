#ifndef NAL_NUMERIC_HPP
#define NAL_NUMERIC_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "nal/tensor.hpp"

namespace nal {

using CD = std::complex<double>;

struct NumericTensor {
    int n = 0;
    std::vector<CD> c;
    CD& at(int i, int j, int k) { return c[(static_cast<size_t>(i) * n + j) * n + k]; }
    const CD& at(int i, int j, int k) const {
        return c[(static_cast<size_t>(i) * n + j) * n + k];
    }
    std::vector<CD> multiply(const std::vector<CD>& x, const std::vector<CD>& y) const;
};

NumericTensor to_numeric(const StructureTensor& a,
                         const std::map<int, CD>& values = {}, int branch = +1);

/// Multi-start damped Gauss-Newton on the quadratic isomorphism equations
/// mult_A(P_i, P_j) = sum_k B[i][j][k] P_k with a singularity rejection.
/// Deterministic for a fixed seed.  Returns candidate row-major matrices
/// ordered by start index (every converged, invertible solution).
std::vector<std::vector<CD>> numeric_iso_candidates(const NumericTensor& a,
                                                    const NumericTensor& b,
                                                    std::uint64_t seed, int starts,
                                                    int iterations);

/// Best rational approximation with denominator <= max_den (continued
/// fractions); false when no approximation is within tolerance.
bool rationalize(double x, long max_den, double tol, mpq_class* out);
bool rationalize_gaussian(CD z, long max_den, double tol, GQ* out);

} // namespace nal

#endif

#include "nal/invariants.hpp"

#include <sstream>

#include "nal/errors.hpp"
#include "nal/identities.hpp"

namespace nal {

namespace {

// Rows spanning a subspace -> reduced echelon basis rows.
std::vector<std::vector<Scalar>> echelon_basis(const std::vector<std::vector<Scalar>>& rows,
                                               int width, Constraints* conditions) {
    if (rows.empty()) return {};
    Matrix m = Matrix::from_rows(rows);
    std::vector<int> pivots;
    Matrix r = m.rref(&pivots, conditions);
    std::vector<std::vector<Scalar>> basis;
    for (size_t i = 0; i < pivots.size(); ++i)
        basis.push_back(r.row(static_cast<int>(i)));
    (void)width;
    return basis;
}

// Coordinates of w in a reduced echelon basis; throws if not in the span.
std::vector<Scalar> coords_in_basis(const std::vector<Scalar>& w,
                                    const std::vector<std::vector<Scalar>>& basis) {
    // pivot of row a = first column with entry 1
    std::vector<Scalar> x(basis.size());
    std::vector<Scalar> residual = w;
    for (size_t a = 0; a < basis.size(); ++a) {
        size_t piv = 0;
        while (piv < basis[a].size() && !(basis[a][piv] == Scalar(1))) ++piv;
        if (piv == basis[a].size()) throw Error("echelon basis row without pivot");
        x[a] = residual[piv];
        if (x[a].is_zero()) continue;
        for (size_t j = 0; j < residual.size(); ++j)
            residual[j] -= x[a] * basis[a][j];
    }
    for (const Scalar& r : residual)
        if (!r.is_zero()) throw Error("vector not in subalgebra span");
    return x;
}

} // namespace

Subalgebra derived_subalgebra(const StructureTensor& a, Constraints* conditions) {
    int n = a.dim();
    std::vector<std::vector<Scalar>> products;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Scalar> row(static_cast<size_t>(n));
            bool nonzero = false;
            for (int k = 0; k < n; ++k) {
                row[static_cast<size_t>(k)] = a.at(i, j, k);
                nonzero = nonzero || !row[static_cast<size_t>(k)].is_zero();
            }
            if (nonzero) products.push_back(std::move(row));
        }
    Subalgebra s;
    s.basis = echelon_basis(products, n, conditions);
    int k = static_cast<int>(s.basis.size());
    s.induced = StructureTensor(k);
    s.induced.params() = a.params();
    s.induced.constraints() = a.constraints();
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
            auto prod = a.multiply(s.basis[static_cast<size_t>(p)],
                                   s.basis[static_cast<size_t>(q)]);
            auto coords = coords_in_basis(prod, s.basis);
            for (int r = 0; r < k; ++r)
                s.induced.at(p, q, r) = coords[static_cast<size_t>(r)];
        }
    return s;
}

SubspaceResult annihilator(const StructureTensor& a, Constraints* conditions) {
    int n = a.dim();
    // equations in unknown x: for all j,k: sum_i x_i c[i][j][k] = 0   (x*A = 0)
    //                         for all i,k: sum_j x_j c[i][j][k] = 0   (A*x = 0)
    Matrix m(2 * n * n, n);
    int row = 0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) m.at(row, i) = a.at(i, j, k);
            ++row;
        }
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) m.at(row, j) = a.at(i, j, k);
            ++row;
        }
    SubspaceResult r;
    r.basis = m.nullspace(conditions);
    r.dim = static_cast<int>(r.basis.size());
    return r;
}

DerivationAlgebra derivation_algebra(const StructureTensor& a, Constraints* conditions) {
    int n = a.dim();
    // unknowns d[p][q] = entry (p*n+q): D(e_p) = sum_q d[p][q] e_q
    Matrix m(n * n * n, n * n);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int q = 0; q < n; ++q) {
                for (int k = 0; k < n; ++k)
                    m.at(row, k * n + q) += a.at(i, j, k);
                for (int p = 0; p < n; ++p) {
                    m.at(row, i * n + p) -= a.at(p, j, q);
                    m.at(row, j * n + p) -= a.at(i, p, q);
                }
                ++row;
            }
    DerivationAlgebra der;
    auto basis = m.nullspace(conditions);
    der.dim = static_cast<int>(basis.size());
    for (const auto& v : basis) {
        Matrix d(n, n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) d.at(p, q) = v[static_cast<size_t>(p * n + q)];
        der.basis.push_back(std::move(d));
    }
    return der;
}

bool derivations_close(const DerivationAlgebra& der) {
    if (der.basis.empty()) return true;
    int n = der.basis[0].rows();
    std::vector<std::vector<Scalar>> span_rows;
    for (const Matrix& d : der.basis) {
        std::vector<Scalar> flat;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) flat.push_back(d.at(p, q));
        span_rows.push_back(std::move(flat));
    }
    Matrix span = Matrix::from_rows(span_rows);
    int base_rank = span.rank();
    for (size_t x = 0; x < der.basis.size(); ++x)
        for (size_t y = x + 1; y < der.basis.size(); ++y) {
            Matrix comm = der.basis[x] * der.basis[y] - der.basis[y] * der.basis[x];
            std::vector<std::vector<Scalar>> rows = span_rows;
            std::vector<Scalar> flat;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) flat.push_back(comm.at(p, q));
            rows.push_back(std::move(flat));
            if (Matrix::from_rows(rows).rank() != base_rank) return false;
        }
    return true;
}

int derivation_dimension_naive(const StructureTensor& a) {
    // Same equations, dense elimination without pivot preferences.
    int n = a.dim();
    std::vector<std::vector<Scalar>> rows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int q = 0; q < n; ++q) {
                std::vector<Scalar> r(static_cast<size_t>(n * n));
                for (int k = 0; k < n; ++k)
                    r[static_cast<size_t>(k * n + q)] += a.at(i, j, k);
                for (int p = 0; p < n; ++p) {
                    r[static_cast<size_t>(i * n + p)] -= a.at(p, j, q);
                    r[static_cast<size_t>(j * n + p)] -= a.at(i, p, q);
                }
                rows.push_back(std::move(r));
            }
    // forward elimination, first nonzero pivot in order
    size_t rank = 0;
    size_t cols = static_cast<size_t>(n * n);
    for (size_t c = 0; c < cols; ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Scalar inv = Scalar(1) / rows[rank][c];
        for (size_t j = c; j < cols; ++j) rows[rank][j] = rows[rank][j] * inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c];
            for (size_t j = c; j < cols; ++j)
                rows[i][j] = rows[i][j] - f * rows[rank][j];
        }
        ++rank;
    }
    return n * n - static_cast<int>(rank);
}

int orbit_dimension(const StructureTensor& a) {
    return a.dim() * a.dim() - derivation_algebra(a).dim;
}

FamilyDimension family_component_dimension(const std::vector<StructureTensor>& samples,
                                           int param_count) {
    if (samples.empty()) throw AllSamplesDegenerate("no usable parameter samples");
    FamilyDimension fd;
    std::vector<int> dims;
    for (const auto& s : samples) dims.push_back(derivation_algebra(s).dim);
    fd.generic_der_dim = *std::min_element(dims.begin(), dims.end());
    for (size_t i = 0; i < dims.size(); ++i)
        if (dims[i] != fd.generic_der_dim) fd.jump_samples.push_back(i);
    int n = samples[0].dim();
    fd.dimension = n * n - fd.generic_der_dim + param_count;
    return fd;
}

std::optional<std::string> derived_iso_class(const StructureTensor& s) {
    if (s.is_zero()) return "zero";
    if (s.dim() != 2) return std::nullopt;
    if (!check_identity(s, IdentityName::Commutative).verified()) return std::nullopt;
    if (!check_identity(s, IdentityName::Jordan).verified()) return std::nullopt;
    Subalgebra s2 = derived_subalgebra(s);
    int d2 = s2.induced.dim();
    if (d2 == 2) {
        if (!check_identity(s, IdentityName::Associative).verified()) return "Jfrak04";
        int der = derivation_algebra(s).dim;
        if (der == 0) return "Jfrak01";
        if (der == 1) return "Jfrak03";
        return std::nullopt;
    }
    if (d2 == 1) {
        // (S^2)^2: zero for Jfrak05 (e1e1 = e2), nonzero for Jfrak02 (e1e1 = e1)
        bool squared_nonzero = !s2.induced.is_zero();
        return squared_nonzero ? std::optional<std::string>("Jfrak02")
                               : std::optional<std::string>("Jfrak05");
    }
    return std::nullopt;
}

bool Fingerprint::operator==(const Fingerprint& o) const {
    return dim_derived == o.dim_derived &&
           dim_derived_squared == o.dim_derived_squared &&
           dim_annihilator == o.dim_annihilator &&
           dim_derivations == o.dim_derivations &&
           identity_bits == o.identity_bits &&
           derived_iso_class == o.derived_iso_class;
}

std::optional<std::string> Fingerprint::first_difference(const Fingerprint& o) const {
    auto pair = [](int a, int b) { return std::to_string(a) + " vs " + std::to_string(b); };
    if (dim_derived != o.dim_derived)
        return "dim_derived: " + pair(dim_derived, o.dim_derived);
    if (dim_derived_squared != o.dim_derived_squared)
        return "dim_derived_squared: " + pair(dim_derived_squared, o.dim_derived_squared);
    if (dim_annihilator != o.dim_annihilator)
        return "dim_annihilator: " + pair(dim_annihilator, o.dim_annihilator);
    if (dim_derivations != o.dim_derivations)
        return "dim_derivations: " + pair(dim_derivations, o.dim_derivations);
    if (identity_bits != o.identity_bits) return "identity_bits";
    if (derived_iso_class != o.derived_iso_class)
        return "derived_iso_class: " + derived_iso_class.value_or("-") + " vs " +
               o.derived_iso_class.value_or("-");
    return std::nullopt;
}

std::string Fingerprint::str() const {
    std::ostringstream os;
    os << "dimA2=" << dim_derived << " dim(A2)2=" << dim_derived_squared
       << " dimAnn=" << dim_annihilator << " dimDer=" << dim_derivations
       << " bits={";
    bool first = true;
    for (VarietyBit b : identity_bits) {
        if (!first) os << ",";
        os << variety_bit_name(b);
        first = false;
    }
    os << "} A2~" << derived_iso_class.value_or("-");
    return os.str();
}

Fingerprint fingerprint(const StructureTensor& a) {
    Fingerprint fp;
    Subalgebra d = derived_subalgebra(a);
    fp.dim_derived = d.induced.dim();
    fp.dim_derived_squared = static_cast<int>(derived_subalgebra(d.induced).basis.size());
    fp.dim_annihilator = annihilator(a).dim;
    fp.dim_derivations = derivation_algebra(a).dim;
    fp.identity_bits = variety_membership(a);
    fp.derived_iso_class = derived_iso_class(d.induced);
    return fp;
}

} // namespace nal

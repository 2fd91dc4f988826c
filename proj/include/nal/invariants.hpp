#ifndef NAL_INVARIANTS_HPP
#define NAL_INVARIANTS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nal/tensor.hpp"

namespace nal {

enum class VarietyBit;  // identities.hpp

struct Subalgebra {
    std::vector<std::vector<Scalar>> basis;  // row vectors, reduced echelon
    StructureTensor induced;                 // multiplication on the span
};

/// Span of all products e_i e_j with the induced multiplication.
/// Parameter-conditional rank drops are recorded into `conditions`.
Subalgebra derived_subalgebra(const StructureTensor& a, Constraints* conditions = nullptr);

struct SubspaceResult {
    int dim = 0;
    std::vector<std::vector<Scalar>> basis;
};

/// {x : xA = Ax = 0}.
SubspaceResult annihilator(const StructureTensor& a, Constraints* conditions = nullptr);

struct DerivationAlgebra {
    int dim = 0;
    std::vector<Matrix> basis;  // row p of each matrix = D(e_p) in coordinates
};

/// Exact nullspace of D(e_i e_j) = D(e_i) e_j + e_i D(e_j).
DerivationAlgebra derivation_algebra(const StructureTensor& a,
                                     Constraints* conditions = nullptr);

/// True when all commutators of basis derivations lie in their span.
bool derivations_close(const DerivationAlgebra& der);

/// Independent oracle for tests: assembles the same linear system but
/// solves it with a plain dense elimination over concrete scalars.
int derivation_dimension_naive(const StructureTensor& a);

/// n^2 - dim Der(A).
int orbit_dimension(const StructureTensor& a);

/// Orbit dimension of a parametric family: (n^2 - generic dim Der) + #params.
/// The generic derivation dimension is the minimum over the samples;
/// samples where it jumps are reported.
struct FamilyDimension {
    int dimension = 0;
    int generic_der_dim = 0;
    std::vector<size_t> jump_samples;
};
FamilyDimension family_component_dimension(const std::vector<StructureTensor>& samples,
                                           int param_count);

struct Fingerprint {
    int dim_derived = 0;
    int dim_derived_squared = 0;
    int dim_annihilator = 0;
    int dim_derivations = 0;
    std::set<VarietyBit> identity_bits;
    std::optional<std::string> derived_iso_class;

    bool operator==(const Fingerprint& o) const;
    bool operator!=(const Fingerprint& o) const { return !(*this == o); }
    /// Name of the first differing field, if any.
    std::optional<std::string> first_difference(const Fingerprint& o) const;
    std::string str() const;
};

Fingerprint fingerprint(const StructureTensor& a);

/// Invariant classifier of a derived algebra against the 2-dimensional
/// Jordan catalog ("Jfrak01".."Jfrak05", "zero"), or nullopt.
std::optional<std::string> derived_iso_class(const StructureTensor& induced);

} // namespace nal

#endif

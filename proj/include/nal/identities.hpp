#ifndef NAL_IDENTITIES_HPP
#define NAL_IDENTITIES_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nal/tensor.hpp"

namespace nal {

enum class IdentityName {
    Commutative,
    Anticommutative,
    Associative,
    Jordan,             // checked together with commutativity
    LeftBicommutative,
    RightBicommutative,
    Bicommutative,      // left and right
    Metabelian,         // (xy)(zt) = 0
    FourAssoc,          // ((a o b) o c) o d = ((a o b) o d) o c
};

std::string identity_name(IdentityName id);
std::optional<IdentityName> identity_from_string(const std::string& s);

struct IdentityCheck {
    enum Outcome { Verified, Refuted, ParameterConditional } outcome = Verified;
    // Refuted: a concrete tuple of coordinate vectors and the discrepancy
    std::vector<std::vector<Scalar>> witness;
    std::vector<Scalar> discrepancy;
    // ParameterConditional: the polynomial whose (non)vanishing decides
    Poly critical;

    bool verified() const { return outcome == Verified; }
    std::string str() const;
};

/// Decide a polynomial identity by expansion with fully generic symbolic
/// vectors (one fresh coordinate indeterminate per slot per basis vector).
IdentityCheck check_identity(const StructureTensor& a, IdentityName id);

/// Independent oracle: evaluate the identity's multilinearization on all
/// basis tuples (full linearization for the Jordan identity).
bool check_identity_bruteforce(const StructureTensor& a, IdentityName id);

enum class VarietyBit {
    MetabelianCommutative,
    CommutativeAssociative,
    Jordan,
    DerivedCommutativeAssociative,
    DerivedJordan,
    Bicommutative,
    BicommutativePlus,
};

std::string variety_bit_name(VarietyBit b);

/// Bit-set of variety memberships with the containments
/// metabelian-commutative <= derived-comm-assoc <= derived-jordan and
/// comm-assoc <= jordan <= derived-jordan enforced by construction.
std::set<VarietyBit> variety_membership(const StructureTensor& a);

} // namespace nal

#endif

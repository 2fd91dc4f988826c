#ifndef NAL_DEGENERATION_HPP
#define NAL_DEGENERATION_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nal/tensor.hpp"

namespace nal {

/// A resolved degeneration witness: parametrized index bindings applied to
/// the source family and a parametrized basis over the t-field.
struct DegenerationData {
    std::string name;
    StructureTensor from;              // source family (may share free params with target)
    StructureTensor to;                // target
    std::map<int, Scalar> index;       // source param -> expression in t and free params
    Matrix basis;                      // rows E_i in the source basis, entries over t
    std::vector<int> free_params;      // parameters left symbolic in the row
    Constraints constraints;
};

/// Index substitution followed by the basis change; entries live in the
/// t-field (possibly with one square root).
StructureTensor transported_constants(const DegenerationData& w,
                                      Constraints* conditions = nullptr);

enum class DegOutcome { VerifiedExact, VerifiedNumeric, Refuted, Inconclusive };

std::string outcome_name(DegOutcome o);

struct DegResult {
    DegOutcome outcome = DegOutcome::Inconclusive;
    std::string detail;
    int branch = +1;                     // sqrt branch that verified
    std::vector<std::string> samples;    // numeric evidence description
};

/// Exact check: every transported constant has valuation >= 0 and its
/// limit equals the target constant in canonical form.  Falls back to the
/// numeric schedule when exactness is blocked.
DegResult verify_degeneration(const DegenerationData& w, bool numeric_only = false);

struct Obstruction {
    bool found = false;
    std::string name;    // which semicontinuous invariant fails
    std::string values;
};

/// Semicontinuity: dim Der may not decrease, dim A^2 / dim Ann monotone,
/// closed identity bits may not be lost.  Family sides are evaluated on all
/// provided samples ("for all alpha" semantics).
Obstruction check_semicontinuity_obstruction(const std::vector<StructureTensor>& from_samples,
                                             const std::vector<StructureTensor>& to_samples);

/// The opposite-algebra argument: `from` is isomorphic to its opposite
/// (witnessed), while `to` is not: both to and to^op extend the same
/// symmetrization T, the Aut(T) shape fixes every cocycle triple, and the
/// two triples differ.
Obstruction opposite_obstruction(const StructureTensor& from, const Matrix& self_witness,
                                 const StructureTensor& to, const Matrix& aut_shape,
                                 const Constraints& shape_constraints);

/// Flag conditions A_p A_q <= A_r with A_k = span(e_k..e_n); r = n+1 means 0.
struct FlagCondition {
    std::vector<std::array<int, 3>> conditions;
    Matrix staged_basis;   // rows: the from-side representative in the flag basis
};

enum class CertOutcome { Verified, MembershipFailed, ExclusionFailed, Inconclusive, Unsupported };

std::string outcome_name(CertOutcome o);

struct CertResult {
    CertOutcome outcome = CertOutcome::Inconclusive;
    std::string detail;
    std::optional<Matrix> counterexample;  // 2x3 chart rows when exclusion fails
};

/// Step 1 (membership): the staged representative satisfies the conditions
/// symbolically.  Step 2 (exclusion): no basis of the target satisfies
/// them; for dim 3 and subspace-only conditions this enumerates the three
/// affine charts of Gr(2,3) and decides emptiness by resultants.
CertResult verify_nondeg_certificate(const StructureTensor& from,
                                     const StructureTensor& to,
                                     const FlagCondition& cond);

/// Exact emptiness decision for a bivariate polynomial system over C.
enum class SystemStatus { Empty, NonEmpty, Unknown };
struct SystemDecision {
    SystemStatus status = SystemStatus::Unknown;
    std::optional<std::pair<GQ, GQ>> witness;  // rational witness when found
    std::string detail;
};
SystemDecision decide_bivariate_empty(std::vector<Poly> polys, int vx, int vy);

} // namespace nal

#endif

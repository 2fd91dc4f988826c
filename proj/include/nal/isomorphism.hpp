#ifndef NAL_ISOMORPHISM_HPP
#define NAL_ISOMORPHISM_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "nal/invariants.hpp"
#include "nal/tensor.hpp"

namespace nal {

/// phi maps the A-basis to the B-basis: verified iff
/// change_basis(A, map) == B entrywise under the declared constraints.
struct IsoWitness {
    Matrix map;
};

struct WitnessCheck {
    bool verified = false;
    int i = -1, j = -1;                 // first differing product
    std::vector<Scalar> discrepancy;    // change_basis(A,w)(i,j,*) - B(i,j,*)
    std::string str() const;
};

WitnessCheck verify_witness(const StructureTensor& a, const StructureTensor& b,
                            const IsoWitness& w);

struct SearchResult {
    bool found = false;
    IsoWitness witness;   // exactly verified when found
};

/// Numeric multi-start least squares, entrywise rationalization over Q(i)
/// with bounded denominators, then exact verification.  NotFound (found =
/// false) is explicitly inconclusive.  Deterministic for a fixed seed.
SearchResult search_isomorphism(const StructureTensor& a, const StructureTensor& b,
                                std::uint64_t seed = 0, int budget = 64);

struct NonisoCertificate {
    bool certified = false;
    std::string differing_invariant;  // first fingerprint field that differs
    Fingerprint fa, fb;
};

/// Fingerprint separation; Inconclusive (certified = false) when equal.
NonisoCertificate certify_noniso(const StructureTensor& a, const StructureTensor& b);

} // namespace nal

#endif

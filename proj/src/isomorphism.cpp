#include "nal/isomorphism.hpp"

#include <sstream>

#include "nal/errors.hpp"
#include "nal/numeric.hpp"

namespace nal {

std::string WitnessCheck::str() const {
    if (verified) return "verified";
    std::ostringstream os;
    os << "refuted at product (" << (i + 1) << "," << (j + 1) << ")";
    return os.str();
}

WitnessCheck verify_witness(const StructureTensor& a, const StructureTensor& b,
                            const IsoWitness& w) {
    if (a.dim() != b.dim()) throw DimensionMismatch("isomorphism between different dims");
    StructureTensor moved = a.change_basis(w.map);
    WitnessCheck r;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            bool diff = false;
            std::vector<Scalar> d(static_cast<size_t>(a.dim()));
            for (int k = 0; k < a.dim(); ++k) {
                d[static_cast<size_t>(k)] = moved.at(i, j, k) - b.at(i, j, k);
                diff = diff || !d[static_cast<size_t>(k)].is_zero();
            }
            if (diff) {
                r.verified = false;
                r.i = i;
                r.j = j;
                r.discrepancy = std::move(d);
                return r;
            }
        }
    r.verified = true;
    return r;
}

SearchResult search_isomorphism(const StructureTensor& a, const StructureTensor& b,
                                std::uint64_t seed, int budget) {
    if (a.dim() != b.dim()) throw DimensionMismatch("isomorphism between different dims");
    SearchResult result;
    if (!a.params().empty() || !b.params().empty())
        throw Error("search_isomorphism needs concrete parameter values");

    NumericTensor na = to_numeric(a), nb = to_numeric(b);
    int starts = budget;
    auto candidates = numeric_iso_candidates(na, nb, seed, starts, 200);

    std::optional<Matrix> best;
    for (const auto& p : candidates) {
        // Rationalize with bounded denominators, then verify exactly.
        Matrix m(a.dim(), a.dim());
        bool ok = true;
        for (int i = 0; i < a.dim() && ok; ++i)
            for (int j = 0; j < a.dim() && ok; ++j) {
                GQ v;
                CD z = p[static_cast<size_t>(i) * a.dim() + j];
                if (std::abs(z) < 1e-10) { m.at(i, j) = Scalar(0); continue; }
                // polished candidates are rational to machine precision;
                // determined entries may exceed the seed bound of 64
                if (!rationalize_gaussian(z, 1000000, 1e-10, &v)) ok = false;
                else m.at(i, j) = Scalar(v);
            }
        if (!ok) continue;
        if (!verify_witness(a, b, IsoWitness{m}).verified) continue;
        // Reproducible tie-break: lexicographically smallest matrix.
        if (!best) {
            best = m;
        } else {
            bool smaller = false;
            for (int i = 0; i < a.dim() && !smaller; ++i)
                for (int j = 0; j < a.dim(); ++j) {
                    const Scalar &x = m.at(i, j), &y = best->at(i, j);
                    if (x == y) continue;
                    smaller = x < y;
                    i = a.dim();
                    break;
                }
            if (smaller) best = m;
        }
    }
    if (best) {
        result.found = true;
        result.witness.map = *best;
    }
    return result;
}

NonisoCertificate certify_noniso(const StructureTensor& a, const StructureTensor& b) {
    NonisoCertificate c;
    c.fa = fingerprint(a);
    c.fb = fingerprint(b);
    auto diff = c.fa.first_difference(c.fb);
    if (diff) {
        c.certified = true;
        c.differing_invariant = *diff;
    }
    return c;
}

} // namespace nal

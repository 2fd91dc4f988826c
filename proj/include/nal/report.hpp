#ifndef NAL_REPORT_HPP
#define NAL_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nal/catalog.hpp"

namespace nal {

struct ReportItem {
    std::string id;
    std::string kind;
    std::string outcome;
    std::string detail;
    bool ok = true;       // false only for Refuted outcomes
    double wall_ms = 0.0;
};

struct Report {
    std::string schema = "nal-report/1";
    std::string theorem;
    std::uint64_t seed = 0;
    std::vector<ReportItem> items;

    bool any_refuted() const;
    bool any_inconclusive() const;
    /// Deterministic JSON (stable field order); timings opt-in because they
    /// vary between runs.
    std::string to_json(bool with_timings = false) const;
    std::string summary() const;
};

/// Run the full verification suite for one theorem (A1-A4, G1-G4).
Report reproduce(const std::string& theorem_id, const Catalog& cat,
                 std::uint64_t seed = 0);

/// Parameter sample tuples from {2,3,5,7,-2,...} filtered by constraints.
std::vector<std::map<std::string, Scalar>> sample_bindings(
    const CatalogEntry& e, size_t want);

/// Instantiations of a family at the default samples.
std::vector<StructureTensor> sampled_tensors(const Catalog& cat,
                                             const std::string& name, size_t want = 5);

} // namespace nal

#endif

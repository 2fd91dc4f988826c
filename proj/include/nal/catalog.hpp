#ifndef NAL_CATALOG_HPP
#define NAL_CATALOG_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nal/degeneration.hpp"
#include "nal/extension.hpp"
#include "nal/tensor.hpp"

namespace nal {

enum class Symmetry { None, Commutative, Anticommutative };

struct CatalogEntry {
    std::string name;
    int dim = 0;
    Symmetry symmetry = Symmetry::None;
    std::vector<std::string> params;   // names, in declaration order
    std::vector<int> param_ids;
    Constraints constraints;
    std::string provenance;
    StructureTensor tensor;            // fully expanded, parameters symbolic
    // multiplication table as written (for rendering)
    std::vector<std::tuple<int, int, std::vector<Scalar>>> table_rows;

    struct Relation {
        std::string to;
        std::vector<std::pair<std::string, Scalar>> bind;  // to-param name -> expr
        Matrix witness;
        bool has_witness = false;
    };
    std::vector<Relation> relations;

    struct AutShape {
        std::vector<std::string> entries;      // free entry names
        std::vector<int> entry_ids;
        Constraints entry_constraints;
        std::vector<std::pair<std::string, Scalar>> at;  // entry-param bindings
        Matrix matrix;
    };
    std::vector<AutShape> aut_shapes;

    struct Opposite {
        bool present = false;
        bool self = false;
        Matrix self_witness;
        std::string to;
        std::vector<std::pair<std::string, Scalar>> bind;
    };
    Opposite opposite;
};

struct DegenerationBlock {
    std::string name;
    std::string from, to;
    std::vector<std::string> params;
    std::vector<int> param_ids;
    Constraints constraints;
    std::vector<std::pair<std::string, Scalar>> index;        // from-param -> expr
    std::vector<std::pair<std::string, Scalar>> target_bind;  // to-param -> expr
    std::vector<std::vector<Scalar>> basis_rows;
    bool parse_failed = false;
    std::string parse_error;
};

struct CertificateBlock {
    std::string name;
    std::string from, to;
    std::vector<std::array<int, 3>> conditions;
    std::vector<std::vector<Scalar>> staged_rows;
};

struct ExtensionCaseBlock {
    std::string name;
    std::vector<std::string> params;
    std::vector<int> param_ids;
    Constraints constraints;
    std::string bplus;
    std::vector<std::pair<std::string, Scalar>> bind;
    std::optional<std::vector<std::vector<Scalar>>> prewitness_rows;
    CocycleTriple theta;      // dim 3 forms
    std::string result;
    std::vector<std::pair<std::string, Scalar>> result_bind;
    bool rescale = false;
};

class Catalog {
public:
    /// The shipped catalog: embedded text, or the directory named by
    /// NAL_CATALOG when set.
    static const Catalog& builtin();

    static Catalog parse_text(const std::string& text, const std::string& source_name);
    static Catalog load_directory(const std::string& dir);

    void absorb(Catalog&& other);

    const CatalogEntry& entry(const std::string& name) const;  // throws UnknownName
    const CatalogEntry* find(const std::string& name) const;
    std::vector<std::string> entry_names() const;

    const std::vector<DegenerationBlock>& degenerations() const { return degenerations_; }
    const std::vector<CertificateBlock>& certificates() const { return certificates_; }
    const std::vector<ExtensionCaseBlock>& extension_cases() const { return cases_; }
    const DegenerationBlock* find_degeneration(const std::string& name) const;
    const CertificateBlock* find_certificate(const std::string& name) const;

    /// Instantiate an entry; bindings by parameter name.  Unbound parameters
    /// stay symbolic.  Throws ConstraintViolated when a constant binding
    /// violates the declared constraints.
    StructureTensor instantiate(const std::string& name,
                                const std::map<std::string, Scalar>& bindings) const;
    static StructureTensor instantiate(const CatalogEntry& e,
                                       const std::map<std::string, Scalar>& bindings);

    /// Resolve a witness block against the catalog.
    DegenerationData resolve(const DegenerationBlock& block) const;
    FlagCondition resolve(const CertificateBlock& block) const;

    std::string render(const CatalogEntry& e) const;

private:
    std::map<std::string, CatalogEntry> entries_;
    std::vector<std::string> order_;
    std::vector<DegenerationBlock> degenerations_;
    std::vector<CertificateBlock> certificates_;
    std::vector<ExtensionCaseBlock> cases_;
    friend class CatalogParser;
};

/// Parse a builtin reference of the form "M04" or "M04(alpha=2)" or a file
/// path containing a single algebra block.
StructureTensor load_algebra_argument(const std::string& arg, const Catalog& cat,
                                      std::string* resolved_name = nullptr);

/// Parse a standalone witness file:
///   witness { params: [alpha] ; matrix { E1 = e2 ; E2 = e1 ; E3 = 1/alpha*e3 } }
Matrix parse_witness_text(const std::string& text);

} // namespace nal

#endif

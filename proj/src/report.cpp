#include "nal/report.hpp"

#include <chrono>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nal/errors.hpp"
#include "nal/identities.hpp"
#include "nal/invariants.hpp"
#include "nal/isomorphism.hpp"

namespace nal {

bool Report::any_refuted() const {
    for (const auto& it : items)
        if (!it.ok) return true;
    return false;
}

bool Report::any_inconclusive() const {
    for (const auto& it : items)
        if (it.outcome.find("Inconclusive") == 0) return true;
    return false;
}

std::string Report::to_json(bool with_timings) const {
    nlohmann::ordered_json j;
    j["schema"] = schema;
    j["theorem"] = theorem;
    j["seed"] = seed;
    const char* env = std::getenv("NAL_CATALOG");
    j["catalog"] = (env != nullptr && *env != '\0') ? env : "builtin";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& it : items) {
        nlohmann::ordered_json o;
        o["id"] = it.id;
        o["kind"] = it.kind;
        o["outcome"] = it.outcome;
        if (!it.detail.empty()) o["detail"] = it.detail;
        o["ok"] = it.ok;
        if (with_timings) o["wall_ms"] = it.wall_ms;
        arr.push_back(std::move(o));
    }
    j["items"] = std::move(arr);
    int refuted = 0, inconclusive = 0;
    for (const auto& it : items) {
        if (!it.ok) ++refuted;
        if (it.outcome.find("Inconclusive") == 0) ++inconclusive;
    }
    j["totals"] = {{"items", items.size()},
                   {"refuted", refuted},
                   {"inconclusive", inconclusive}};
    return j.dump(2) + "\n";
}

std::string Report::summary() const {
    std::ostringstream os;
    for (const auto& it : items)
        os << (it.ok ? "  ok  " : " FAIL ") << "[" << it.kind << "] " << it.id
           << ": " << it.outcome << (it.detail.empty() ? "" : " (" + it.detail + ")")
           << "\n";
    return os.str();
}

std::vector<std::map<std::string, Scalar>> sample_bindings(const CatalogEntry& e,
                                                           size_t want) {
    static const long pool[] = {2, 3, 5, 7, -2, 11, -3, 13};
    std::vector<std::map<std::string, Scalar>> out;
    if (e.params.empty()) {
        out.push_back({});
        return out;
    }
    for (size_t shift = 0; shift < 8 && out.size() < want; ++shift) {
        std::map<std::string, Scalar> b;
        std::map<int, GQ> values;
        for (size_t i = 0; i < e.params.size(); ++i) {
            GQ v(pool[(i + shift) % 8]);
            b[e.params[i]] = Scalar(v);
            values[e.param_ids[i]] = v;
        }
        try {
            e.constraints.check_values(values);
            out.push_back(std::move(b));
        } catch (const ConstraintViolated&) {
        }
    }
    return out;
}

std::vector<StructureTensor> sampled_tensors(const Catalog& cat, const std::string& name,
                                             size_t want) {
    const CatalogEntry& e = cat.entry(name);
    std::vector<StructureTensor> out;
    for (const auto& b : sample_bindings(e, want))
        out.push_back(Catalog::instantiate(e, b));
    return out;
}

namespace {

using Task = std::function<ReportItem()>;

void run_tasks(std::vector<Task> tasks, Report* report) {
    size_t n = tasks.size();
    std::vector<ReportItem> results(n);
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= n) break;
            auto start = std::chrono::steady_clock::now();
            ReportItem item;
            try {
                item = tasks[k]();
            } catch (const Error& e) {
                item.id = "task#" + std::to_string(k);
                item.kind = "error";
                item.outcome = "Refuted";
                item.detail = e.what();
                item.ok = false;
            }
            item.wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
            results[k] = std::move(item);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w + 1 < workers && w + 1 < n; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& r : results) report->items.push_back(std::move(r));
}

ReportItem make_item(const std::string& id, const std::string& kind, bool ok,
                     const std::string& outcome, const std::string& detail = "") {
    ReportItem it;
    it.id = id;
    it.kind = kind;
    it.outcome = outcome;
    it.detail = detail;
    it.ok = ok;
    return it;
}

ReportItem expect_bit(const Catalog& cat, const std::string& name, VarietyBit bit,
                      bool expected = true) {
    const CatalogEntry& e = cat.entry(name);
    bool has = variety_membership(e.tensor).count(bit) > 0;
    bool ok = has == expected;
    return make_item("identity/" + name + "/" + variety_bit_name(bit), "identity", ok,
                     ok ? "Verified" : "Refuted",
                     ok ? "" : (has ? "unexpectedly holds" : "fails"));
}

ReportItem expect_identity(const StructureTensor& t, const std::string& name,
                           IdentityName id, bool expected) {
    IdentityCheck c = check_identity(t, id);
    bool holds = c.outcome == IdentityCheck::Verified;
    bool ok = holds == expected;
    return make_item("identity/" + name + "/" + identity_name(id), "identity", ok,
                     ok ? "Verified" : "Refuted", ok ? "" : c.str());
}

ReportItem relation_item(const Catalog& cat, const CatalogEntry& e,
                         const CatalogEntry::Relation& rel, size_t idx) {
    std::string id = "relation/" + e.name + "->" + rel.to + "#" + std::to_string(idx);
    if (!rel.has_witness)
        return make_item(id, "relation", false, "Inconclusive", "no witness shipped");
    std::map<std::string, Scalar> bind;
    for (const auto& [k, v] : rel.bind) bind[k] = v;
    StructureTensor target = cat.instantiate(rel.to, bind);
    StructureTensor source = e.tensor;
    // constraints needed by the witness itself (inverses of parameters)
    WitnessCheck chk = verify_witness(source, target, IsoWitness{rel.witness});
    if (chk.verified)
        return make_item(id, "relation", true, "Verified", "symbolic witness");
    return make_item(id, "relation", false, "Refuted", chk.str());
}

ReportItem dim_item(const Catalog& cat, const std::string& name, int expected) {
    const CatalogEntry& e = cat.entry(name);
    if (e.params.empty()) {
        int dim = orbit_dimension(e.tensor);
        bool ok = dim == expected;
        return make_item("dimension/" + name, "dimension", ok,
                         ok ? "Verified" : "Refuted",
                         "dim O = " + std::to_string(dim) + ", expected " +
                             std::to_string(expected));
    }
    auto samples = sampled_tensors(cat, name, 5);
    FamilyDimension fd = family_component_dimension(samples,
                                                    static_cast<int>(e.params.size()));
    bool ok = fd.dimension == expected;
    std::string detail = "dim closure = " + std::to_string(fd.dimension) + " (9 - " +
                         std::to_string(fd.generic_der_dim) + " + " +
                         std::to_string(e.params.size()) + "), expected " +
                         std::to_string(expected);
    if (!fd.jump_samples.empty())
        detail += "; derivation dimension jumps at " +
                  std::to_string(fd.jump_samples.size()) + " sample(s)";
    return make_item("dimension/" + name, "dimension", ok, ok ? "Verified" : "Refuted",
                     detail);
}

ReportItem degeneration_item(const Catalog& cat, const DegenerationBlock& block) {
    std::string id = "degeneration/" + block.name;
    if (block.parse_failed)
        return make_item(id, "degeneration", true, "Inconclusive(parse)",
                         block.parse_error);
    DegenerationData data = cat.resolve(block);
    DegResult r = verify_degeneration(data);
    bool ok = r.outcome != DegOutcome::Refuted;
    std::string detail = r.detail;
    if (r.outcome == DegOutcome::VerifiedExact && r.branch < 0)
        detail = "conjugate branch";
    if (r.outcome == DegOutcome::VerifiedNumeric) {
        detail = "branch " + std::string(r.branch > 0 ? "+" : "-");
        for (const auto& s : r.samples) detail += "; " + s;
    }
    return make_item(id, "degeneration", ok, outcome_name(r.outcome), detail);
}

ReportItem extension_item(const Catalog& cat, const ExtensionCaseBlock& c) {
    std::string id = "extension/" + c.name;
    std::map<std::string, Scalar> bind;
    for (const auto& [k, v] : c.bind) bind[k] = v;
    StructureTensor t = cat.instantiate(c.bplus, bind);
    t.constraints().merge(c.constraints);
    if (c.prewitness_rows)
        t = t.change_basis(Matrix::from_rows(*c.prewitness_rows));
    // 1. T must be bicommutative-plus (commutative + 4-assoc).
    if (!check_identity(t, IdentityName::Commutative).verified() ||
        !check_identity(t, IdentityName::FourAssoc).verified())
        return make_item(id, "extension", false, "Refuted",
                         "symmetrization is not bicommutative-plus");
    // 2. theta in Z^2.
    CocycleCheck cc = is_cocycle(t, c.theta);
    if (!cc.verified)
        return make_item(id, "extension", false, "Refuted", "cocycle: " + cc.detail);
    // 3. the extension reproduces the listed algebra.
    StructureTensor ext = extend(t, c.theta);
    StructureTensor printed = ext;
    if (c.rescale) {
        Matrix half = Matrix::identity(3);
        half.at(2, 2) = Scalar(1) / Scalar(2);
        printed = ext.change_basis(half);
    }
    std::map<std::string, Scalar> rbind;
    for (const auto& [k, v] : c.result_bind) rbind[k] = v;
    StructureTensor target = cat.instantiate(c.result, rbind);
    if (!(printed == target))
        return make_item(id, "extension", false, "Refuted",
                         "extension does not match " + c.result);
    // 4. the symmetrization comes back.
    if (!(ext.jordan_product() == t))
        return make_item(id, "extension", false, "Refuted",
                         "jordan product does not return the base");
    return make_item(id, "extension", true, "Verified",
                     c.rescale ? "with e3 -> e3/2 rescaling" : "");
}

ReportItem obstruction_item(const Catalog& cat, const std::string& from,
                            const std::string& to, const std::string& expect_name) {
    auto fs = sampled_tensors(cat, from, 5);
    auto ts = sampled_tensors(cat, to, 5);
    Obstruction ob = check_semicontinuity_obstruction(fs, ts);
    std::string id = "obstruction/" + from + "-notto-" + to;
    if (ob.found && (expect_name.empty() || ob.name == expect_name))
        return make_item(id, "obstruction", true, "Obstruction(" + ob.name + ")",
                         ob.values);
    if (ob.found)
        return make_item(id, "obstruction", false, "Refuted",
                         "found " + ob.name + " but expected " + expect_name);
    return make_item(id, "obstruction", false, "Refuted", "no obstruction found");
}

ReportItem opposite_obstruction_item(const Catalog& cat, const std::string& from,
                                     const std::string& to) {
    const CatalogEntry& f = cat.entry(from);
    const CatalogEntry& g = cat.entry(to);
    std::string id = "obstruction/" + from + "-notto-" + to;
    if (!f.opposite.present || !f.opposite.self)
        return make_item(id, "obstruction", false, "Inconclusive",
                         "no self-opposite witness for " + from);
    // Aut shape of the symmetrization of `to`: it is an instance of A03.
    const CatalogEntry& a03 = cat.entry("A03");
    if (a03.aut_shapes.empty())
        return make_item(id, "obstruction", false, "Inconclusive", "no Aut shape");
    const auto& shape = a03.aut_shapes.front();
    Obstruction ob = opposite_obstruction(f.tensor, f.opposite.self_witness, g.tensor,
                                          shape.matrix, shape.entry_constraints);
    if (ob.found)
        return make_item(id, "obstruction", true, "Obstruction(" + ob.name + ")",
                         ob.values);
    return make_item(id, "obstruction", false, "Refuted", "no obstruction certified");
}

ReportItem certificate_item(const Catalog& cat, const CertificateBlock& block) {
    FlagCondition f = cat.resolve(block);
    CertResult r = verify_nondeg_certificate(cat.entry(block.from).tensor,
                                             cat.entry(block.to).tensor, f);
    bool ok = r.outcome == CertOutcome::Verified;
    return make_item("certificate/" + block.name, "certificate", ok,
                     outcome_name(r.outcome), r.detail);
}

ReportItem derived_class_item(const Catalog& cat, const std::string& name,
                              const std::string& expected_label, int expected_dim) {
    const CatalogEntry& e = cat.entry(name);
    Subalgebra d = derived_subalgebra(e.tensor);
    int dim = d.induced.dim();
    auto label = derived_iso_class(d.induced);
    bool ok = dim == expected_dim &&
              (expected_label.empty() || label.value_or("-") == expected_label);
    std::string detail = "dim A^2 = " + std::to_string(dim);
    if (!expected_label.empty()) detail += ", A^2 ~ " + label.value_or("-");
    return make_item("derived/" + name, "invariant", ok, ok ? "Verified" : "Refuted",
                     detail);
}

ReportItem fingerprint_item(const Catalog& cat, const std::string& name) {
    const CatalogEntry& e = cat.entry(name);
    Fingerprint fp = fingerprint(e.tensor);
    return make_item("fingerprint/" + name, "fingerprint", true, "Info", fp.str());
}

ReportItem derived_commassoc_item(const Catalog& cat, const std::string& name) {
    const CatalogEntry& e = cat.entry(name);
    Subalgebra d = derived_subalgebra(e.tensor);
    bool ok = d.induced.dim() == 0 ||
              (check_identity(d.induced, IdentityName::Commutative).verified() &&
               check_identity(d.induced, IdentityName::Associative).verified());
    return make_item("derived-assoc/" + name, "invariant", ok,
                     ok ? "Verified" : "Refuted", "A^2 commutative associative");
}

const std::vector<std::string>& a1_entries() {
    static const std::vector<std::string> v{"M01", "M02", "M03", "M04",
                                            "M05", "M06", "M07"};
    return v;
}

std::vector<std::string> a2_entries() {
    std::vector<std::string> v;
    for (int i = 1; i <= 30; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "A%02d", i);
        v.push_back(buf);
    }
    return v;
}

const std::vector<std::string>& a3_entries() {
    static const std::vector<std::string> v{"Jcal01", "Jcal02", "Jcal03", "Jcal04",
                                            "Jcal05", "Jcal06", "Jcal07"};
    return v;
}

std::vector<std::string> a4_entries() {
    std::vector<std::string> v{"G00"};
    for (int i = 1; i <= 24; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "B%02d", i);
        v.push_back(buf);
    }
    return v;
}

// Proposition B+: entries with the bindings that make them bicommutative-plus.
std::vector<std::pair<std::string, std::map<std::string, Scalar>>> bplus_entries() {
    std::vector<std::pair<std::string, std::map<std::string, Scalar>>> v;
    for (const char* n : {"M04", "M05", "M06", "M07", "A03", "A11", "A16", "A17",
                          "A20", "A26", "A27", "A29", "A30"})
        v.push_back({n, {}});
    v.push_back({"A01", {{"alpha", Scalar(0)}, {"beta", Scalar(0)}}});
    v.push_back({"A24", {{"alpha", Scalar(1)}}});
    return v;
}

void reproduce_a1(const Catalog& cat, std::vector<Task>* tasks) {
    for (const std::string& name : a1_entries()) {
        tasks->push_back([&cat, name] {
            return expect_bit(cat, name, VarietyBit::MetabelianCommutative);
        });
        bool assoc_expected = (name == "M01" || name == "M02" || name == "M03");
        tasks->push_back([&cat, name, assoc_expected] {
            return expect_identity(cat.entry(name).tensor, name,
                                   IdentityName::Associative, assoc_expected);
        });
    }
    for (const std::string& name : a1_entries()) {
        const CatalogEntry& e = cat.entry(name);
        for (size_t r = 0; r < e.relations.size(); ++r)
            tasks->push_back([&cat, &e, r] { return relation_item(cat, e, e.relations[r], r); });
    }
    for (const std::string& name : a1_entries())
        tasks->push_back([&cat, name] { return fingerprint_item(cat, name); });
}

void reproduce_a2(const Catalog& cat, std::vector<Task>* tasks) {
    auto derived_label = [](const std::string& n) -> std::pair<std::string, int> {
        int k = std::stoi(n.substr(1));
        if (k <= 2) return {"Jfrak01", 2};
        if (k <= 11) return {"Jfrak02", 2};
        if (k <= 20) return {"Jfrak03", 2};
        if (k <= 28) return {"Jfrak05", 2};
        return {"", 1};
    };
    for (const std::string& name : a2_entries()) {
        tasks->push_back([&cat, name] {
            return expect_identity(cat.entry(name).tensor, name,
                                   IdentityName::Commutative, true);
        });
        tasks->push_back([&cat, name] {
            return expect_identity(cat.entry(name).tensor, name,
                                   IdentityName::Associative, false);
        });
        auto [label, dim] = derived_label(name);
        tasks->push_back([&cat, name, label, dim] {
            return derived_class_item(cat, name, label, dim);
        });
        tasks->push_back([&cat, name] { return derived_commassoc_item(cat, name); });
        tasks->push_back([&cat, name] {
            return expect_bit(cat, name, VarietyBit::DerivedCommutativeAssociative);
        });
    }
    for (const std::string& name : a2_entries()) {
        const CatalogEntry& e = cat.entry(name);
        for (size_t r = 0; r < e.relations.size(); ++r)
            tasks->push_back([&cat, &e, r] { return relation_item(cat, e, e.relations[r], r); });
    }
    for (const std::string& name : a2_entries())
        tasks->push_back([&cat, name] { return fingerprint_item(cat, name); });
}

void reproduce_a3(const Catalog& cat, std::vector<Task>* tasks) {
    for (const std::string& name : a3_entries()) {
        tasks->push_back([&cat, name] {
            return expect_identity(cat.entry(name).tensor, name,
                                   IdentityName::Commutative, true);
        });
        tasks->push_back([&cat, name] {
            return expect_bit(cat, name, VarietyBit::DerivedJordan);
        });
        tasks->push_back([&cat, name] {
            return expect_bit(cat, name, VarietyBit::DerivedCommutativeAssociative,
                              false);
        });
        tasks->push_back([&cat, name] {
            return derived_class_item(cat, name, "Jfrak04", 2);
        });
    }
    for (const std::string& name : a3_entries()) {
        const CatalogEntry& e = cat.entry(name);
        for (size_t r = 0; r < e.relations.size(); ++r)
            tasks->push_back([&cat, &e, r] { return relation_item(cat, e, e.relations[r], r); });
    }
    for (const std::string& name : a3_entries())
        tasks->push_back([&cat, name] { return fingerprint_item(cat, name); });
}

void reproduce_a4(const Catalog& cat, std::vector<Task>* tasks) {
    for (const std::string& name : a4_entries()) {
        tasks->push_back([&cat, name] {
            return expect_identity(cat.entry(name).tensor, name,
                                   IdentityName::LeftBicommutative, true);
        });
        tasks->push_back([&cat, name] {
            return expect_identity(cat.entry(name).tensor, name,
                                   IdentityName::RightBicommutative, true);
        });
    }
    for (const auto& [name, bind] : bplus_entries()) {
        tasks->push_back([&cat, name = name, bind = bind] {
            StructureTensor t = cat.instantiate(name, bind);
            std::string id = name;
            if (!bind.empty()) {
                id += "(";
                bool first = true;
                for (const auto& [k, v] : bind) {
                    if (!first) id += ",";
                    id += k + "=" + v.str();
                    first = false;
                }
                id += ")";
            }
            IdentityCheck comm = check_identity(t, IdentityName::Commutative);
            IdentityCheck fa = check_identity(t, IdentityName::FourAssoc);
            bool ok = comm.verified() && fa.verified();
            return make_item("bplus/" + id, "identity", ok, ok ? "Verified" : "Refuted",
                             ok ? "commutative and four-associative" : fa.str());
        });
    }
    for (const auto& c : cat.extension_cases())
        tasks->push_back([&cat, &c] { return extension_item(cat, c); });
    for (const std::string& name : a4_entries()) {
        const CatalogEntry& e = cat.entry(name);
        for (size_t r = 0; r < e.relations.size(); ++r)
            tasks->push_back([&cat, &e, r] { return relation_item(cat, e, e.relations[r], r); });
    }
    for (const std::string& name : a4_entries())
        tasks->push_back([&cat, name] { return fingerprint_item(cat, name); });
    // opposite-pair facts
    tasks->push_back([&cat] {
        const CatalogEntry& b06 = cat.entry("B06");
        bool ok = b06.opposite.present && b06.opposite.self &&
                  verify_witness(b06.tensor, b06.tensor.opposite(),
                                 IsoWitness{b06.opposite.self_witness})
                      .verified;
        return make_item("opposite/B06-self", "relation", ok,
                         ok ? "Verified" : "Refuted", "B06 is self-opposite");
    });
    tasks->push_back([&cat] {
        std::map<std::string, Scalar> flip{{"gamma", -Scalar::variable(symbols::intern("gamma"))}};
        StructureTensor lhs = cat.entry("B07").tensor.opposite();
        StructureTensor rhs = cat.instantiate("B08", flip);
        bool ok = lhs == rhs;
        return make_item("opposite/B07-op-is-B08", "relation", ok,
                         ok ? "Verified" : "Refuted", "opposite(B07^g) = B08^-g");
    });
}

void reproduce_g(const Catalog& cat, const std::string& id, std::vector<Task>* tasks) {
    struct DimExpect { const char* name; int dim; };
    std::vector<DimExpect> dims;
    std::string prefix = id + "/";
    if (id == "G1") {
        dims = {{"M04", 8}, {"M07", 7}};
    } else if (id == "G2") {
        dims = {{"A01", 12}, {"J07", 9}};
    } else if (id == "G3") {
        dims = {{"A01", 12}, {"Jcal01", 10}, {"J07", 9}, {"J12", 8},
                {"J16", 7},  {"J19", 7},     {"J14", 3}};
    } else if (id == "G4") {
        dims = {{"B06", 10}, {"J07", 9}, {"B07", 9}, {"B08", 9}};
    }
    for (const auto& d : dims)
        tasks->push_back([&cat, d] { return dim_item(cat, d.name, d.dim); });

    for (const auto& block : cat.degenerations())
        if (block.name.rfind(prefix, 0) == 0)
            tasks->push_back([&cat, &block] { return degeneration_item(cat, block); });
    for (const auto& block : cat.certificates())
        if (block.name.rfind(prefix, 0) == 0)
            tasks->push_back([&cat, &block] { return certificate_item(cat, block); });

    if (id == "G2") {
        tasks->push_back([&cat] { return obstruction_item(cat, "A01", "J07", "dim_derived"); });
    } else if (id == "G3") {
        for (const char* to : {"J07", "J12", "J14", "J16", "J19"})
            tasks->push_back([&cat, to] {
                return obstruction_item(cat, "Jcal01", to, "dim_derived");
            });
        tasks->push_back([&cat] {
            // The A01 -/-> Jcal01 argument relies on the component structure
            // of the two-dimensional Jordan variety; outside the invariant
            // obstructions, reported for completeness.
            return make_item("obstruction/A01-notto-Jcal01", "obstruction", true,
                             "Inconclusive",
                             "derived algebras Jfrak01 vs Jfrak04 lie in distinct "
                             "two-dimensional components; not an invariant check");
        });
    } else if (id == "G4") {
        tasks->push_back([&cat] { return opposite_obstruction_item(cat, "B06", "B07"); });
        tasks->push_back([&cat] { return opposite_obstruction_item(cat, "B06", "B08"); });
    }
}

} // namespace

Report reproduce(const std::string& theorem_id, const Catalog& cat, std::uint64_t seed) {
    Report rep;
    rep.theorem = theorem_id;
    rep.seed = seed;
    std::vector<Task> tasks;
    if (theorem_id == "A1") reproduce_a1(cat, &tasks);
    else if (theorem_id == "A2") reproduce_a2(cat, &tasks);
    else if (theorem_id == "A3") reproduce_a3(cat, &tasks);
    else if (theorem_id == "A4") reproduce_a4(cat, &tasks);
    else if (theorem_id == "G1" || theorem_id == "G2" || theorem_id == "G3" ||
             theorem_id == "G4")
        reproduce_g(cat, theorem_id, &tasks);
    else
        throw UnknownTheorem(theorem_id);
    run_tasks(std::move(tasks), &rep);
    return rep;
}

} // namespace nal

// nal: exact verification tool for 3-dimensional metabelian commutative,
// derived commutative associative, derived Jordan and bicommutative algebras.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nal/catalog.hpp"
#include "nal/expr_parser.hpp"
#include "nal/degeneration.hpp"
#include "nal/errors.hpp"
#include "nal/identities.hpp"
#include "nal/invariants.hpp"
#include "nal/isomorphism.hpp"
#include "nal/report.hpp"

namespace {

constexpr int kVerified = 0;
constexpr int kRefuted = 1;
constexpr int kInconclusive = 2;
constexpr int kInputError = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw nal::Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_check(const std::string& file, const std::string& identity) {
    auto id = nal::identity_from_string(identity);
    if (!id) {
        std::cerr << "unknown identity: " << identity << "\n";
        return kInputError;
    }
    std::string name;
    nal::StructureTensor t = nal::load_algebra_argument(file, nal::Catalog::builtin(), &name);
    nal::IdentityCheck c = nal::check_identity(t, *id);
    std::cout << name << " / " << nal::identity_name(*id) << ": " << c.str() << "\n";
    switch (c.outcome) {
        case nal::IdentityCheck::Verified: return kVerified;
        case nal::IdentityCheck::Refuted: return kRefuted;
        case nal::IdentityCheck::ParameterConditional: return kInconclusive;
    }
    return kInconclusive;
}

int cmd_invariants(const std::string& file, const std::vector<std::string>& at) {
    std::string name;
    nal::StructureTensor t = nal::load_algebra_argument(file, nal::Catalog::builtin(), &name);
    if (!at.empty()) {
        std::map<int, nal::Scalar> bind;
        for (const std::string& kv : at) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw nal::Error("expected k=v: " + kv);
            std::string key = kv.substr(0, eq);
            int id = nal::symbols::intern(key);
            bind[id] = nal::parse_scalar_expr(kv.substr(eq + 1), {{key, id}});
        }
        t = t.substitute(bind);
    }
    nal::Fingerprint fp = nal::fingerprint(t);
    std::cout << name << "\n  " << fp.str() << "\n";
    std::cout << "  dim O = " << (t.dim() * t.dim() - fp.dim_derivations) << "\n";
    return kVerified;
}

int cmd_iso(const std::string& a_arg, const std::string& b_arg,
            const std::string& witness_file, bool search, std::uint64_t seed,
            int budget) {
    const nal::Catalog& cat = nal::Catalog::builtin();
    nal::StructureTensor a = nal::load_algebra_argument(a_arg, cat);
    nal::StructureTensor b = nal::load_algebra_argument(b_arg, cat);
    if (!witness_file.empty()) {
        nal::Matrix w = nal::parse_witness_text(read_file(witness_file));
        nal::WitnessCheck c = nal::verify_witness(a, b, nal::IsoWitness{w});
        std::cout << "witness: " << c.str() << "\n";
        return c.verified ? kVerified : kRefuted;
    }
    if (search) {
        nal::SearchResult r = nal::search_isomorphism(a, b, seed, budget);
        if (r.found) {
            std::cout << "found witness:\n" << r.witness.map.str() << "\n";
            return kVerified;
        }
        std::cout << "no witness found (inconclusive)\n";
        nal::NonisoCertificate c = nal::certify_noniso(a, b);
        if (c.certified) {
            std::cout << "non-isomorphism certificate: " << c.differing_invariant << "\n";
            return kRefuted;
        }
        return kInconclusive;
    }
    nal::NonisoCertificate c = nal::certify_noniso(a, b);
    if (c.certified) {
        std::cout << "non-isomorphism certificate: " << c.differing_invariant << "\n";
        return kRefuted;
    }
    std::cout << "fingerprints agree (inconclusive); try --search\n";
    std::cout << "  " << c.fa.str() << "\n";
    return kInconclusive;
}

int cmd_deg_verify(const std::string& file, bool numeric_only) {
    const nal::Catalog& cat = nal::Catalog::builtin();
    nal::Catalog local;
    const nal::Catalog* source = &cat;
    std::vector<const nal::DegenerationBlock*> blocks;
    if (std::ifstream(file).good()) {
        local = nal::Catalog::parse_text(read_file(file), file);
        for (const auto& b : local.degenerations()) blocks.push_back(&b);
        if (blocks.empty()) throw nal::Error("no degeneration blocks in " + file);
        // entries may live in the builtin catalog
    } else if (const nal::DegenerationBlock* b = cat.find_degeneration(file)) {
        blocks.push_back(b);
    } else {
        throw nal::Error("no witness file or builtin witness named " + file);
    }
    int worst = kVerified;
    for (const auto* b : blocks) {
        if (b->parse_failed) {
            std::cout << b->name << ": Inconclusive(parse) " << b->parse_error << "\n";
            worst = std::max(worst, kInconclusive);
            continue;
        }
        nal::DegenerationData data = source->resolve(*b);
        nal::DegResult r = nal::verify_degeneration(data, numeric_only);
        std::cout << b->name << ": " << nal::outcome_name(r.outcome);
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
        if (r.outcome == nal::DegOutcome::Refuted) worst = std::max(worst, kRefuted);
        else if (r.outcome == nal::DegOutcome::Inconclusive)
            worst = std::max(worst, kInconclusive);
    }
    return worst;
}

int cmd_deg_forbid(const std::string& from, const std::string& to,
                   const std::string& cert_file) {
    const nal::Catalog& cat = nal::Catalog::builtin();
    nal::CertificateBlock block;
    if (std::ifstream(cert_file).good()) {
        nal::Catalog local = nal::Catalog::parse_text(read_file(cert_file), cert_file);
        if (local.certificates().empty())
            throw nal::Error("no certificate block in " + cert_file);
        block = local.certificates().front();
    } else if (const nal::CertificateBlock* b = cat.find_certificate(cert_file)) {
        block = *b;
    } else {
        throw nal::Error("no certificate file or builtin certificate named " + cert_file);
    }
    nal::FlagCondition cond = cat.resolve(block);
    nal::CertResult r = nal::verify_nondeg_certificate(
        nal::load_algebra_argument(from, cat), nal::load_algebra_argument(to, cat), cond);
    std::cout << "certificate: " << nal::outcome_name(r.outcome);
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    if (r.counterexample)
        std::cout << "counterexample subspace rows:\n" << r.counterexample->str() << "\n";
    switch (r.outcome) {
        case nal::CertOutcome::Verified: return kVerified;
        case nal::CertOutcome::MembershipFailed:
        case nal::CertOutcome::ExclusionFailed: return kRefuted;
        default: return kInconclusive;
    }
}

int cmd_reproduce(const std::string& id, const std::string& report_file,
                  std::uint64_t seed, bool timings) {
    nal::Report rep = nal::reproduce(id, nal::Catalog::builtin(), seed);
    std::cout << rep.summary();
    int refuted = 0;
    for (const auto& it : rep.items)
        if (!it.ok) ++refuted;
    std::cout << rep.items.size() << " items, " << refuted << " refuted\n";
    if (!report_file.empty()) {
        std::ofstream out(report_file);
        out << rep.to_json(timings);
    }
    return rep.any_refuted() ? kRefuted : kVerified;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classification checks for 3-dimensional metabelian "
                 "commutative, derived commutative associative, derived Jordan "
                 "and bicommutative algebras"};
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "decide a polynomial identity");
    std::string check_file, check_identity_name;
    check->add_option("file", check_file, "algebra file or catalog name")->required();
    check->add_option("--identity", check_identity_name, "identity name")->required();

    // invariants
    auto* inv = app.add_subcommand("invariants", "isomorphism invariants");
    std::string inv_file;
    std::vector<std::string> inv_at;
    inv->add_option("file", inv_file, "algebra file or catalog name")->required();
    inv->add_option("--at", inv_at, "parameter binding k=v (repeatable)");

    // iso
    auto* iso = app.add_subcommand("iso", "verify or search isomorphisms");
    std::string iso_a, iso_b, iso_witness;
    bool iso_search = false;
    std::uint64_t iso_seed = 0;
    int iso_budget = 64;
    iso->add_option("A", iso_a)->required();
    iso->add_option("B", iso_b)->required();
    iso->add_option("--witness", iso_witness, "witness matrix file");
    iso->add_flag("--search", iso_search, "numeric-then-exact witness search");
    iso->add_option("--seed", iso_seed, "search seed");
    iso->add_option("--budget", iso_budget, "number of search starts");

    // deg
    auto* deg = app.add_subcommand("deg", "degenerations");
    deg->require_subcommand(1);
    auto* degv = deg->add_subcommand("verify", "verify degeneration witnesses");
    std::string degv_file;
    bool degv_numeric = false;
    degv->add_option("witness", degv_file, "witness file or builtin witness name")
        ->required();
    degv->add_flag("--numeric-only", degv_numeric, "skip the exact check");
    auto* degf = deg->add_subcommand("forbid", "verify a non-degeneration certificate");
    std::string degf_from, degf_to, degf_cert;
    degf->add_option("from", degf_from)->required();
    degf->add_option("to", degf_to)->required();
    degf->add_option("--cert", degf_cert, "certificate file or builtin name")->required();

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "run a full theorem suite");
    std::string rep_id, rep_out;
    std::uint64_t rep_seed = 0;
    bool rep_timings = false;
    rep->add_option("id", rep_id, "A1, A2, A3, A4, G1, G2, G3 or G4")->required();
    rep->add_option("--report", rep_out, "write a JSON report");
    rep->add_option("--seed", rep_seed, "seed recorded in the report");
    rep->add_flag("--timings", rep_timings, "include per-item wall time in the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return cmd_check(check_file, check_identity_name);
        if (*inv) return cmd_invariants(inv_file, inv_at);
        if (*iso) return cmd_iso(iso_a, iso_b, iso_witness, iso_search, iso_seed, iso_budget);
        if (*deg) {
            if (*degv) return cmd_deg_verify(degv_file, degv_numeric);
            if (*degf) return cmd_deg_forbid(degf_from, degf_to, degf_cert);
        }
        if (*rep) return cmd_reproduce(rep_id, rep_out, rep_seed, rep_timings);
    } catch (const nal::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const nal::UnknownName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const nal::UnknownTheorem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const nal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

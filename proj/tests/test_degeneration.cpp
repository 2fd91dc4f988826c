#include <doctest.h>

#include <random>

#include "nal/catalog.hpp"
#include "nal/degeneration.hpp"
#include "nal/expr_parser.hpp"
#include "nal/invariants.hpp"
#include "nal/report.hpp"

using namespace nal;

namespace {
const Catalog& cat() { return Catalog::builtin(); }
}

TEST_CASE("transported constants of the M02 -> M01 row") {
    const DegenerationBlock* block = cat().find_degeneration("G1/M02-to-M01");
    REQUIRE(block != nullptr);
    DegenerationData data = cat().resolve(*block);
    StructureTensor moved = transported_constants(data);
    // E1E1 = E2, E1E3 = E3E1 = t E2, everything else zero
    CHECK(moved.at(0, 0, 1) == Scalar(1));
    CHECK(moved.at(0, 2, 1) == Scalar::t());
    CHECK(moved.at(2, 0, 1) == Scalar::t());
    int nonzero = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (!moved.at(i, j, k).is_zero()) ++nonzero;
    CHECK(nonzero == 3);
    // identity witness: constants independent of t
    DegenerationData idw;
    idw.name = "identity";
    idw.from = cat().entry("M05").tensor;
    idw.to = cat().entry("M05").tensor;
    idw.basis = Matrix::identity(3);
    StructureTensor same = transported_constants(idw);
    CHECK(same == idw.from);
}

TEST_CASE("G1 rows verify exactly") {
    for (const auto& block : cat().degenerations()) {
        if (block.name.rfind("G1/", 0) != 0) continue;
        DegResult r = verify_degeneration(cat().resolve(block));
        INFO(block.name);
        CHECK(r.outcome == DegOutcome::VerifiedExact);
    }
}

TEST_CASE("a wrong witness is refuted") {
    // basis (t e1, e2, e3) does not carry M01 to J03
    DegenerationData w;
    w.name = "bogus";
    w.from = cat().entry("M01").tensor;
    w.to = cat().entry("J03").tensor;
    std::map<std::string, int> none;
    w.basis = Matrix::from_rows({parse_vector_expr("t*e1", none, 3),
                                 parse_vector_expr("e2", none, 3),
                                 parse_vector_expr("e3", none, 3)});
    DegResult r = verify_degeneration(w);
    CHECK(r.outcome == DegOutcome::Refuted);
}

TEST_CASE("numeric fallback agrees with exact verification on sqrt-free rows") {
    for (const std::string name : {"G1/M02-to-M01", "G1/M04-to-M05", "G4/B07-to-B16"}) {
        const DegenerationBlock* block = cat().find_degeneration(name);
        REQUIRE(block != nullptr);
        DegenerationData data = cat().resolve(*block);
        CHECK(verify_degeneration(data).outcome == DegOutcome::VerifiedExact);
        DegResult num = verify_degeneration(data, /*numeric_only=*/true);
        INFO(name);
        CHECK(num.outcome == DegOutcome::VerifiedNumeric);
    }
}

TEST_CASE("semicontinuity obstructions") {
    auto a01 = sampled_tensors(cat(), "A01");
    auto j07 = sampled_tensors(cat(), "J07");
    Obstruction ob = check_semicontinuity_obstruction(a01, j07);
    CHECK(ob.found);
    CHECK(ob.name == "dim_derived");

    auto jcal01 = sampled_tensors(cat(), "Jcal01");
    Obstruction ob2 = check_semicontinuity_obstruction(jcal01, j07);
    CHECK(ob2.found);
    CHECK(ob2.name == "dim_derived");

    auto self = sampled_tensors(cat(), "M05");
    Obstruction none = check_semicontinuity_obstruction(self, self);
    CHECK(!none.found);
}

TEST_CASE("verified rows are consistent with the semicontinuity checks") {
    for (const auto& block : cat().degenerations()) {
        if (block.parse_failed) continue;
        DegenerationData data = cat().resolve(block);
        // sample the free parameters on both sides consistently
        std::vector<StructureTensor> from_samples, to_samples;
        static const long pool[] = {2, 3, 5, 7, -2, 11, -3, 13};
        for (size_t shift = 0; shift < 8 && from_samples.size() < 3; ++shift) {
            std::map<int, Scalar> bind;
            std::map<int, GQ> values;
            for (size_t i = 0; i < data.free_params.size(); ++i) {
                GQ v(pool[(i + shift) % 8]);
                bind[data.free_params[i]] = Scalar(v);
                values[data.free_params[i]] = v;
            }
            try {
                data.constraints.check_values(values);
            } catch (const ConstraintViolated&) {
                continue;
            }
            // the index may move sampled parameters into t-dependence; for
            // the invariant check we sample the source family parameters
            // after index substitution at a generic t value
            std::map<int, Scalar> index_at;
            bool usable = true;
            for (const auto& [p, expr] : data.index) {
                Scalar v = expr;
                for (const auto& [var, s] : bind) v = v.substitute_var(var, s);
                try {
                    v = v.substitute_var(symbols::t(), Scalar(GQ::fraction(1, 7)));
                } catch (const Error&) {
                    usable = false;
                    break;
                }
                if (v.has_sqrt()) { usable = false; break; }
                index_at[p] = v;
            }
            if (!usable) continue;
            try {
                from_samples.push_back(data.from.substitute(index_at));
                to_samples.push_back(data.to.substitute(bind));
            } catch (const Error&) {
            }
        }
        if (from_samples.empty()) continue;
        Obstruction ob = check_semicontinuity_obstruction(from_samples, to_samples);
        INFO(block.name, ": ", ob.name, " ", ob.values);
        CHECK(!ob.found);
    }
}

TEST_CASE("opposite obstruction for the bicommutative components") {
    const CatalogEntry& b06 = cat().entry("B06");
    const CatalogEntry& a03 = cat().entry("A03");
    REQUIRE(b06.opposite.present);
    REQUIRE(!a03.aut_shapes.empty());
    for (const std::string to : {"B07", "B08"}) {
        Obstruction ob = opposite_obstruction(
            b06.tensor, b06.opposite.self_witness, cat().entry(to).tensor,
            a03.aut_shapes.front().matrix, a03.aut_shapes.front().entry_constraints);
        INFO(to);
        CHECK(ob.found);
        CHECK(ob.name == "self_opposite");
    }
}

TEST_CASE("the G1 flag certificate verifies") {
    const CertificateBlock* block = cat().find_certificate("G1/M04-notto-M07");
    REQUIRE(block != nullptr);
    FlagCondition cond = cat().resolve(*block);
    CertResult r = verify_nondeg_certificate(cat().entry("M04").tensor,
                                             cat().entry("M07").tensor, cond);
    CHECK(r.outcome == CertOutcome::Verified);
}

TEST_CASE("exclusion failure produces an explicit subspace") {
    // the same conditions are satisfiable inside M01 (A2 = span{e2,e3})
    const CertificateBlock* block = cat().find_certificate("G1/M04-notto-M07");
    REQUIRE(block != nullptr);
    FlagCondition cond = cat().resolve(*block);
    CertResult r = verify_nondeg_certificate(cat().entry("M04").tensor,
                                             cat().entry("M01").tensor, cond);
    CHECK(r.outcome == CertOutcome::ExclusionFailed);
    REQUIRE(r.counterexample.has_value());
    // the witness rows must span a square-zero subspace of M01
    const Matrix& u = *r.counterexample;
    const StructureTensor& m01 = cat().entry("M01").tensor;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            auto prod = m01.multiply(u.row(a), u.row(b));
            for (const Scalar& s : prod) CHECK(s.is_zero());
        }
}

TEST_CASE("a singular staged basis fails membership") {
    FlagCondition cond;
    cond.conditions = {{2, 2, 4}};
    cond.staged_basis = Matrix::from_rows({
        {Scalar(1), Scalar(0), Scalar(0)},
        {Scalar(1), Scalar(0), Scalar(0)},
        {Scalar(0), Scalar(0), Scalar(1)},
    });
    CertResult r = verify_nondeg_certificate(cat().entry("M04").tensor,
                                             cat().entry("M07").tensor, cond);
    CHECK(r.outcome == CertOutcome::MembershipFailed);
}

TEST_CASE("certified exclusions survive dense random subspace sampling") {
    // 10^4 random rational 2-dim subspaces of M07: none is square-zero
    const StructureTensor& m07 = cat().entry("M07").tensor;
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> coef(-6, 6);
    int sampled = 0;
    while (sampled < 10000) {
        std::vector<Scalar> u1(3), u2(3);
        for (int k = 0; k < 3; ++k) {
            u1[static_cast<size_t>(k)] = Scalar(coef(rng));
            u2[static_cast<size_t>(k)] = Scalar(coef(rng));
        }
        // need a genuine 2-dim span
        Matrix span = Matrix::from_rows({u1, u2});
        if (span.rank() != 2) continue;
        ++sampled;
        bool square_zero = true;
        for (const auto& a : {u1, u2})
            for (const auto& b : {u1, u2}) {
                for (const Scalar& s : m07.multiply(a, b))
                    if (!s.is_zero()) { square_zero = false; break; }
                if (!square_zero) break;
            }
        CHECK(!square_zero);
        if (square_zero) break;
    }
}

TEST_CASE("fingerprint monotonicity composes along verified chains") {
    // A -> B and B -> C verified implies the monotone invariants also
    // compare correctly between A and C (checked at matching samples)
    struct Chain { const char* a; const char* b; const char* c;
                   std::map<std::string, Scalar> abind, bbind; };
    std::vector<Chain> chains{
        {"M04", "M03", "M02", {{"alpha", Scalar(2)}}, {}},
        {"M03", "M02", "M01", {}, {}},
        {"B07", "B16", "B12", {{"gamma", Scalar(3)}}, {{"alpha", Scalar(3)}}},
    };
    for (const auto& ch : chains) {
        StructureTensor a = cat().instantiate(ch.a, ch.abind);
        StructureTensor c = cat().instantiate(ch.c, {});
        Fingerprint fa = fingerprint(a), fc = fingerprint(c);
        CHECK(fa.dim_derived >= fc.dim_derived);
        CHECK(fa.dim_derivations <= fc.dim_derivations);
        CHECK(fa.dim_annihilator <= fc.dim_annihilator);
    }
}

TEST_CASE("double evaluation of sqrt-free transported rows matches exact"
          " arithmetic at t = 1e-6") {
    for (const auto& block : cat().degenerations()) {
        if (block.parse_failed) continue;
        DegenerationData data = cat().resolve(block);
        StructureTensor moved;
        try {
            moved = transported_constants(data);
        } catch (const Error&) {
            continue;
        }
        bool has_sqrt = false;
        for (int i = 0; i < 3 && !has_sqrt; ++i)
            for (int j = 0; j < 3 && !has_sqrt; ++j)
                for (int k = 0; k < 3; ++k)
                    if (moved.at(i, j, k).has_sqrt()) { has_sqrt = true; break; }
        if (has_sqrt) continue;
        // exact rational evaluation vs double pipeline
        std::map<int, GQ> exact_vals{{symbols::t(), GQ::fraction(1, 1000000)}};
        std::map<int, std::complex<double>> dbl_vals{{symbols::t(), {1e-6, 0.0}}};
        for (int p : data.free_params) {
            exact_vals[p] = GQ(3);
            dbl_vals[p] = {3.0, 0.0};
        }
        bool sample_ok = true;
        try {
            data.constraints.check_values(exact_vals);
        } catch (const ConstraintViolated&) {
            sample_ok = false;
        }
        if (!sample_ok) continue;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const Scalar& s = moved.at(i, j, k);
                    std::map<int, GQ> ev = exact_vals;
                    GQ exact;
                    try {
                        exact = s.num().eval(ev);
                        GQ den = s.den().eval(ev);
                        if (den.is_zero()) continue;
                        exact /= den;
                    } catch (const Error&) {
                        continue;
                    }
                    std::complex<double> approx = s.eval_numeric(dbl_vals);
                    std::complex<double> exact_d(exact.re().get_d(), exact.im().get_d());
                    double scale = std::max(1.0, std::abs(exact_d));
                    INFO(block.name);
                    CHECK(std::abs(approx - exact_d) <= 1e-8 * scale);
                }
    }
}

TEST_CASE("unsupported condition shapes are reported") {
    FlagCondition cond;
    cond.conditions = {{2, 2, 3}};
    cond.staged_basis = Matrix::identity(3);
    CertResult r = verify_nondeg_certificate(cat().entry("M01").tensor,
                                             cat().entry("M07").tensor, cond);
    CHECK(r.outcome == CertOutcome::Unsupported);
}

TEST_CASE("the chart eliminator agrees with dense random sampling") {
    // randomized cross-check of decide_bivariate_empty on chart systems
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<int> coef(-2, 2);
    int x = symbols::intern("#tx"), y = symbols::intern("#ty");
    auto random_poly = [&]() {
        Poly p;
        for (int ex = 0; ex <= 2; ++ex)
            for (int ey = 0; ey + ex <= 2; ++ey) {
                int c = coef(rng);
                if (c == 0) continue;
                Mono m;
                if (ex) m.emplace_back(x, ex);
                if (ey) m.emplace_back(y, ey);
                std::sort(m.begin(), m.end());
                p.add_term(m, GQ(c));
            }
        return p;
    };
    int decided = 0;
    for (int it = 0; it < 40; ++it) {
        std::vector<Poly> sys;
        int count = 1 + (it % 3);
        for (int k = 0; k < count; ++k) sys.push_back(random_poly());
        SystemDecision dec = decide_bivariate_empty(sys, x, y);
        if (dec.status == SystemStatus::Unknown) continue;
        ++decided;
        // dense sampling: if the eliminator says Empty, no sampled point may solve
        bool sampled_solution = false;
        for (int xi = -50; xi <= 50 && !sampled_solution; ++xi)
            for (int yi = -50; yi <= 50; ++yi) {
                bool all = true;
                for (const Poly& p : sys) {
                    if (!p.eval({{x, GQ(xi)}, {y, GQ(yi)}}).is_zero()) {
                        all = false;
                        break;
                    }
                }
                if (all) { sampled_solution = true; break; }
            }
        if (dec.status == SystemStatus::Empty) CHECK(!sampled_solution);
        if (sampled_solution) CHECK(dec.status == SystemStatus::NonEmpty);
    }
    CHECK(decided >= 30);
}

#include "nal/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nal/errors.hpp"
#include "nal/extension.hpp"
#include "nal/identities.hpp"
#include "nal/invariants.hpp"
#include "nal/isomorphism.hpp"
#include "nal/numeric.hpp"

namespace nal {

std::string outcome_name(DegOutcome o) {
    switch (o) {
        case DegOutcome::VerifiedExact: return "VerifiedExact";
        case DegOutcome::VerifiedNumeric: return "VerifiedNumeric";
        case DegOutcome::Refuted: return "Refuted";
        case DegOutcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string outcome_name(CertOutcome o) {
    switch (o) {
        case CertOutcome::Verified: return "Verified";
        case CertOutcome::MembershipFailed: return "MembershipFailed";
        case CertOutcome::ExclusionFailed: return "ExclusionFailed";
        case CertOutcome::Inconclusive: return "Inconclusive";
        case CertOutcome::Unsupported: return "Unsupported";
    }
    return "?";
}

StructureTensor transported_constants(const DegenerationData& w, Constraints* conditions) {
    std::map<int, Scalar> bindings(w.index.begin(), w.index.end());
    StructureTensor source = w.from.substitute(bindings);
    source.constraints().merge(w.constraints);
    return source.change_basis(w.basis, conditions);
}

namespace {

struct EntryComparison {
    enum Kind { Equal, Pole, Mismatch, NeedsNumeric } kind = Equal;
    std::string detail;
};

// The transported entry converges to the target for every admissible
// parameter value iff val(entry - target) > 0; numerator coefficients that
// vanish at special parameters only raise the valuation, so the lower-bound
// valuation with denominator/radicand guards is exactly the right test.
EntryComparison compare_entry(const Scalar& entry, const Scalar& target,
                              const Constraints& con, int branch) {
    EntryComparison r;
    try {
        Scalar diff = entry - target;
        if (diff.is_zero()) return r;
        int v2 = diff.valuation2_lower(con, branch);
        if (v2 >= 1) return r;  // limit 0, uniformly in the parameters
        if (v2 < 0) {
            r.kind = EntryComparison::Pole;
            r.detail = "pole at t=0";
            return r;
        }
        r.kind = EntryComparison::Mismatch;
        try {
            ScalarLimit lim = entry.limit_at_zero(con, branch);
            r.detail = "limit " + (lim.pole ? std::string("(pole)") : lim.value.str()) +
                       " != " + target.str();
        } catch (const IndeterminateValuation&) {
            r.detail = "generic limit differs from " + target.str();
        }
        return r;
    } catch (const MixedRadicals& e) {
        r.kind = EntryComparison::NeedsNumeric;
        r.detail = e.what();
        return r;
    } catch (const IndeterminateValuation& e) {
        r.kind = EntryComparison::NeedsNumeric;
        r.detail = e.what();
        return r;
    }
}

std::vector<std::map<int, GQ>> parameter_samples(const std::vector<int>& params,
                                                 const Constraints& con, size_t want) {
    static const long pool[] = {2, 3, 5, 7, -2, 11, -3, 13};
    std::vector<std::map<int, GQ>> out;
    if (params.empty()) {
        out.push_back({});
        return out;
    }
    for (size_t shift = 0; shift < 8 && out.size() < want; ++shift) {
        std::map<int, GQ> s;
        for (size_t i = 0; i < params.size(); ++i)
            s[params[i]] = GQ(pool[(i + shift) % 8]);
        try {
            con.check_values(s);
            out.push_back(std::move(s));
        } catch (const ConstraintViolated&) {
        }
    }
    return out;
}

// Numeric schedule: error at t = 10^-k must shrink >= 5x per decade and the
// final error at 10^-6 must be below 1e-6.
bool numeric_decay_ok(const std::vector<double>& errs) {
    if (errs.empty()) return false;
    for (size_t i = 1; i < errs.size(); ++i)
        if (errs[i] > errs[i - 1] / 5.0 + 1e-14) return false;
    // boundary allowance for entries whose error is exactly 1.0 * t
    return errs.back() < 1e-6 + 1e-9;
}

} // namespace

DegResult verify_degeneration(const DegenerationData& w, bool numeric_only) {
    DegResult result;
    Constraints con = w.constraints;
    con.merge(w.from.constraints());

    StructureTensor moved;
    try {
        moved = transported_constants(w, &con);
    } catch (const Error& e) {
        result.outcome = DegOutcome::Inconclusive;
        result.detail = std::string("transport failed: ") + e.what();
        return result;
    }

    int n = w.to.dim();
    if (!numeric_only) {
        std::string first_block;
        for (int branch : {+1, -1}) {
            bool exact = true;
            bool blocked = false;
            std::string why;
            for (int i = 0; i < n && exact; ++i)
                for (int j = 0; j < n && exact; ++j)
                    for (int k = 0; k < n && exact; ++k) {
                        EntryComparison c = compare_entry(moved.at(i, j, k),
                                                          w.to.at(i, j, k), con, branch);
                        if (c.kind == EntryComparison::Equal) continue;
                        exact = false;
                        blocked = (c.kind == EntryComparison::NeedsNumeric);
                        std::ostringstream os;
                        os << "entry (" << (i + 1) << "," << (j + 1) << "," << (k + 1)
                           << "): " << c.detail;
                        why = os.str();
                    }
            if (exact) {
                result.outcome = DegOutcome::VerifiedExact;
                result.branch = branch;
                if (branch < 0) result.detail = "conjugate branch";
                return result;
            }
            if (first_block.empty()) first_block = why;
            if (blocked) break;  // exactness blocked: decide numerically
        }
        result.detail = first_block;
    }

    // Numeric fallback.
    auto samples = parameter_samples(w.free_params, con, 5);
    if (samples.empty()) {
        result.outcome = DegOutcome::Inconclusive;
        result.detail += "; no parameter sample satisfies the constraints";
        return result;
    }
    if (!w.free_params.empty() && samples.size() < 5) {
        // keep going; report the sample count
    }
    for (int branch : {+1, -1}) {
        bool all_ok = true;
        std::vector<std::string> notes;
        for (const auto& sample : samples) {
            std::map<int, CD> values;
            for (const auto& [v, q] : sample)
                values[v] = CD(q.re().get_d(), q.im().get_d());
            std::vector<double> errs;
            for (int k = 2; k <= 6; ++k) {
                values[symbols::t()] = CD(std::pow(10.0, -k), 0.0);
                double maxerr = 0;
                try {
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            for (int q = 0; q < n; ++q) {
                                CD lhs = moved.at(i, j, q).eval_numeric(values, branch);
                                CD rhs = w.to.at(i, j, q).eval_numeric(values, branch);
                                maxerr = std::max(maxerr, std::abs(lhs - rhs));
                            }
                } catch (const Error&) {
                    maxerr = std::numeric_limits<double>::infinity();
                }
                errs.push_back(maxerr);
            }
            if (!numeric_decay_ok(errs)) {
                all_ok = false;
                break;
            }
            std::ostringstream os;
            os << "sample{";
            bool first = true;
            for (const auto& [v, q] : sample) {
                if (!first) os << ",";
                os << symbols::name(v) << "=" << q.str();
                first = false;
            }
            os << "} err@1e-6=" << errs.back();
            notes.push_back(os.str());
        }
        if (all_ok) {
            result.outcome = DegOutcome::VerifiedNumeric;
            result.branch = branch;
            result.samples = notes;
            return result;
        }
    }
    if (result.detail.find("!=") != std::string::npos ||
        result.detail.find("pole") != std::string::npos) {
        result.outcome = DegOutcome::Refuted;
    } else {
        result.outcome = DegOutcome::Inconclusive;
        if (result.detail.empty()) result.detail = "numeric fallback did not converge";
    }
    return result;
}

Obstruction check_semicontinuity_obstruction(
        const std::vector<StructureTensor>& from_samples,
        const std::vector<StructureTensor>& to_samples) {
    Obstruction ob;
    if (from_samples.empty() || to_samples.empty())
        throw Error("semicontinuity check needs at least one sample per side");

    auto der_min = [](const std::vector<StructureTensor>& v) {
        int best = 1 << 20;
        for (const auto& a : v) best = std::min(best, derivation_algebra(a).dim);
        return best;
    };
    auto d2_max = [](const std::vector<StructureTensor>& v) {
        int best = 0;
        for (const auto& a : v)
            best = std::max(best, static_cast<int>(derived_subalgebra(a).basis.size()));
        return best;
    };
    auto d2_min = [](const std::vector<StructureTensor>& v) {
        int best = 1 << 20;
        for (const auto& a : v)
            best = std::min(best, static_cast<int>(derived_subalgebra(a).basis.size()));
        return best;
    };
    auto ann_min = [](const std::vector<StructureTensor>& v) {
        int best = 1 << 20;
        for (const auto& a : v) best = std::min(best, annihilator(a).dim);
        return best;
    };
    auto ann_max = [](const std::vector<StructureTensor>& v) {
        int best = 0;
        for (const auto& a : v) best = std::max(best, annihilator(a).dim);
        return best;
    };

    // dim Der weakly increases along degenerations ("for all alpha": the
    // minimum over the family must not exceed the target's value).
    int der_from = der_min(from_samples), der_to = der_min(to_samples);
    if (der_from > der_to) {
        ob.found = true;
        ob.name = "dim_derivations";
        ob.values = std::to_string(der_from) + " > " + std::to_string(der_to);
        return ob;
    }
    // dim A^2 weakly decreases.
    int d2f = d2_max(from_samples), d2t = d2_min(to_samples);
    if (d2f < d2t) {
        ob.found = true;
        ob.name = "dim_derived";
        ob.values = std::to_string(d2f) + " < " + std::to_string(d2t);
        return ob;
    }
    // dim Ann weakly increases.
    int annf = ann_min(from_samples), annt = ann_max(to_samples);
    if (annf > annt) {
        ob.found = true;
        ob.name = "dim_annihilator";
        ob.values = std::to_string(annf) + " > " + std::to_string(annt);
        return ob;
    }
    // Closed identity bits cannot be lost.
    std::set<VarietyBit> from_bits = variety_membership(from_samples[0]);
    for (size_t i = 1; i < from_samples.size(); ++i) {
        auto bits = variety_membership(from_samples[i]);
        std::set<VarietyBit> inter;
        std::set_intersection(from_bits.begin(), from_bits.end(), bits.begin(),
                              bits.end(), std::inserter(inter, inter.begin()));
        from_bits = inter;
    }
    for (VarietyBit b : from_bits) {
        bool missing_everywhere = true;
        for (const auto& to : to_samples)
            if (variety_membership(to).count(b)) { missing_everywhere = false; break; }
        if (missing_everywhere) {
            ob.found = true;
            ob.name = "identity_bits";
            ob.values = variety_bit_name(b) + " lost";
            return ob;
        }
    }
    return ob;
}

Obstruction opposite_obstruction(const StructureTensor& from, const Matrix& self_witness,
                                 const StructureTensor& to, const Matrix& aut_shape,
                                 const Constraints& shape_constraints) {
    Obstruction ob;
    // 1. from is self-opposite via the witness.
    if (!verify_witness(from, from.opposite(), IsoWitness{self_witness}).verified)
        throw Error("self-opposite witness does not verify");
    // 2. to and to^op symmetrize to the same algebra.
    StructureTensor t_plus = to.jordan_product();
    StructureTensor top = to.opposite();
    if (!(top.jordan_product() == t_plus))
        throw Error("opposite pair has distinct symmetrizations");
    // 3. the Aut(T) shape consists of automorphisms, symbolically.
    StructureTensor t_shape = t_plus;
    t_shape.constraints().merge(shape_constraints);
    Constraints cond;
    StructureTensor moved = t_shape.change_basis(aut_shape, &cond);
    if (!(moved == t_shape))
        throw Error("aut shape is not an automorphism family of the symmetrization");
    // 4. the action fixes the skew part of `to`.
    CocycleTriple theta = skew_triple(to);
    CocycleTriple theta_acted = act(theta, aut_shape, &cond);
    if (!(theta_acted == theta)) return ob;  // orbit not a fixed point: inconclusive
    // 5. fixed orbit and distinct triples => not isomorphic to the opposite.
    CocycleTriple theta_op = skew_triple(top);
    if (theta == theta_op) return ob;        // self-opposite after all
    ob.found = true;
    ob.name = "self_opposite";
    ob.values = "source is isomorphic to its opposite, target is not";
    return ob;
}

// ---------------------------------------------------------------------------
// Flag certificates

namespace {

bool condition_supported(const std::array<int, 3>& c, int n) {
    if (n != 3) return false;
    auto [p, q, r] = c;
    if (p == 2 && q == 2 && (r == 2 || r == 4)) return true;
    if (((p == 1 && q == 2) || (p == 2 && q == 1)) && (r == 2 || r == 4)) return true;
    return false;
}

} // namespace

SystemDecision decide_bivariate_empty(std::vector<Poly> polys, int vx, int vy);

CertResult verify_nondeg_certificate(const StructureTensor& from,
                                     const StructureTensor& to,
                                     const FlagCondition& cond) {
    CertResult res;
    int n = from.dim();
    if (cond.conditions.empty())
        throw Error("certificate has no flag conditions");

    // Step 1: membership of the staged representative.
    StructureTensor staged;
    try {
        staged = from.change_basis(cond.staged_basis);
    } catch (const SingularMatrix&) {
        res.outcome = CertOutcome::MembershipFailed;
        res.detail = "staged basis is singular";
        return res;
    }
    for (const auto& [p, q, r] : cond.conditions) {
        for (int i = p - 1; i < n; ++i)
            for (int j = q - 1; j < n; ++j)
                for (int k = 0; k < std::min(r - 1, n); ++k)
                    if (!staged.at(i, j, k).is_zero()) {
                        res.outcome = CertOutcome::MembershipFailed;
                        std::ostringstream os;
                        os << "staged representative violates A" << p << "*A" << q
                           << " <= " << (r == n + 1 ? "0" : "A" + std::to_string(r))
                           << " at (" << (i + 1) << "," << (j + 1) << "," << (k + 1) << ")";
                        res.detail = os.str();
                        return res;
                    }
    }

    // Step 2: exclusion on the target via the Gr(2,3) charts.
    for (const auto& c : cond.conditions)
        if (!condition_supported(c, n)) {
            res.outcome = CertOutcome::Unsupported;
            res.detail = "condition shape not covered by the 3-dimensional eliminator";
            return res;
        }
    if (!to.params().empty()) {
        res.outcome = CertOutcome::Unsupported;
        res.detail = "exclusion needs a concrete target";
        return res;
    }

    int x = symbols::intern("#chartx");
    int y = symbols::intern("#charty");
    // chart rows of Gr(2,3): pivot pair {1,2}, {1,3}, {2,3}
    const std::array<std::array<std::array<int, 3>, 2>, 3> patterns{{
        {{{1, 0, 2}, {0, 1, 3}}},   // (1,0,x),(0,1,y)
        {{{1, 2, 0}, {0, 3, 1}}},   // (1,x,0),(0,y,1)
        {{{2, 1, 0}, {3, 0, 1}}},   // (x,1,0),(y,0,1)
    }};

    for (int chart = 0; chart < 3; ++chart) {
        std::vector<std::vector<Scalar>> u(2, std::vector<Scalar>(3));
        for (int rrow = 0; rrow < 2; ++rrow)
            for (int col = 0; col < 3; ++col) {
                int pat = patterns[static_cast<size_t>(chart)][static_cast<size_t>(rrow)]
                                  [static_cast<size_t>(col)];
                if (pat == 0) u[static_cast<size_t>(rrow)][static_cast<size_t>(col)] = Scalar(0);
                else if (pat == 1) u[static_cast<size_t>(rrow)][static_cast<size_t>(col)] = Scalar(1);
                else if (pat == 2) u[static_cast<size_t>(rrow)][static_cast<size_t>(col)] = Scalar::variable(x);
                else u[static_cast<size_t>(rrow)][static_cast<size_t>(col)] = Scalar::variable(y);
            }
        std::vector<Poly> system;
        auto push_zero_conditions = [&system](const std::vector<Scalar>& w) {
            for (const Scalar& s : w)
                if (!s.is_zero()) system.push_back(s.num());
        };
        auto push_membership_conditions = [&](const std::vector<Scalar>& w) {
            // det [w; u1; u2] = 0
            Matrix m = Matrix::from_rows({w, u[0], u[1]});
            Scalar d = m.det();
            if (!d.is_zero()) system.push_back(d.num());
        };
        std::vector<std::vector<Scalar>> basis3;
        for (int i = 0; i < 3; ++i) {
            std::vector<Scalar> e(3);
            e[static_cast<size_t>(i)] = Scalar(1);
            basis3.push_back(std::move(e));
        }
        for (const auto& [p, q, r] : cond.conditions) {
            std::vector<std::vector<Scalar>> lefts, rights;
            auto side = [&](int which) -> std::vector<std::vector<Scalar>> {
                if (which == 2) return u;
                return basis3;  // A_1 = whole space: basis vectors suffice
            };
            lefts = side(p);
            rights = side(q);
            for (const auto& a : lefts)
                for (const auto& b : rights) {
                    std::vector<Scalar> w = to.multiply(a, b);
                    if (r == 4) push_zero_conditions(w);
                    else push_membership_conditions(w);
                }
        }
        SystemDecision dec = decide_bivariate_empty(system, x, y);
        if (dec.status == SystemStatus::NonEmpty) {
            res.outcome = CertOutcome::ExclusionFailed;
            res.detail = "chart " + std::to_string(chart + 1) + ": " + dec.detail;
            if (dec.witness) {
                Matrix w(2, 3);
                std::map<int, Scalar> vals{{x, Scalar(dec.witness->first)},
                                           {y, Scalar(dec.witness->second)}};
                for (int rrow = 0; rrow < 2; ++rrow)
                    for (int col = 0; col < 3; ++col)
                        w.at(rrow, col) =
                            u[static_cast<size_t>(rrow)][static_cast<size_t>(col)]
                                .substitute(vals);
                res.counterexample = w;
            }
            return res;
        }
        if (dec.status == SystemStatus::Unknown) {
            res.outcome = CertOutcome::Inconclusive;
            res.detail = "chart " + std::to_string(chart + 1) +
                         ": eliminator could not decide: " + dec.detail;
            return res;
        }
    }
    res.outcome = CertOutcome::Verified;
    return res;
}

// ---------------------------------------------------------------------------
// Bivariate emptiness via resultants with dynamic evaluation.

namespace {

struct SplitNeeded {
    Poly factor;  // proper factor of the modulus
};

// Remainder of a by b in the single variable `var`, both with constant
// coefficients (univariate over Q(i)).
Poly uni_rem(Poly a, const Poly& b, int var) {
    int db = b.degree(var);
    if (db == 0) return Poly();
    GQ lb = b.coeff_of(var, db).constant_value();
    while (!a.is_zero() && a.degree(var) >= db) {
        int da = a.degree(var);
        GQ f = a.coeff_of(var, da).constant_value() / lb;
        a -= b.mul_scalar(f) * Poly::variable(var, da - db);
        if (a.degree(var) == da && !a.coeff_of(var, da).is_zero())
            throw Error("internal: univariate division failed to reduce degree");
    }
    return a;
}

Poly uni_gcd(Poly a, Poly b, int var) {
    while (!b.is_zero()) {
        Poly r = uni_rem(a, b, var);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.mul_scalar(GQ(1) / a.lc_global());
}

// Extended gcd for univariate polys over Q(i): g = s*a + t*b (only s needed).
void uni_ext_gcd(const Poly& a, const Poly& b, int var, Poly* g, Poly* s) {
    Poly r0 = a, r1 = b;
    Poly s0(1), s1;
    while (!r1.is_zero()) {
        Poly q, rem;
        int d1 = r1.degree(var);
        if (d1 == 0) {
            q = r0.mul_scalar(GQ(1) / r1.constant_value());
            rem = Poly();
        } else {
            rem = r0;
            GQ l1 = r1.coeff_of(var, d1).constant_value();
            while (!rem.is_zero() && rem.degree(var) >= d1) {
                int dr = rem.degree(var);
                GQ f = rem.coeff_of(var, dr).constant_value() / l1;
                Poly term = Poly::variable(var, dr - d1).mul_scalar(f);
                q += term;
                rem -= r1 * term;
            }
        }
        Poly s2 = s0 - q * s1;
        r0 = r1; r1 = rem;
        s0 = s1; s1 = s2;
    }
    GQ lc = r0.is_zero() ? GQ(1) : r0.lc_global();
    *g = r0.mul_scalar(GQ(1) / lc);
    *s = s0.mul_scalar(GQ(1) / lc);
}

// Reduce the K[x] coefficients of p (a poly in x and y) modulo m(x).
Poly reduce_mod(const Poly& p, const Poly& m, int x, int y) {
    Poly out;
    for (int k = 0; k <= p.degree(y); ++k) {
        Poly ck = p.coeff_of(y, k);
        if (ck.is_zero()) continue;
        Poly red = uni_rem(ck, m, x);
        if (!red.is_zero()) out += red * Poly::variable(y, k);
    }
    return out;
}

// Inverse of a(x) modulo m(x); throws SplitNeeded when gcd(a, m) is proper.
Poly inv_mod(const Poly& a, const Poly& m, int x) {
    Poly g, s;
    uni_ext_gcd(a, m, x, &g, &s);
    if (g.degree(x) > 0) {
        if (g.degree(x) == m.degree(x)) throw Error("internal: inverse of zero mod m");
        throw SplitNeeded{g};
    }
    return uni_rem(s, m, x);
}

// y-gcd of the system modulo m(x), with dynamic evaluation splitting.
// Appends (modulus branch, gcd in y) pairs; gcd constant 1 means empty branch.
void mod_gcd_branches(std::vector<Poly> polys, Poly m, int x, int y,
                      std::vector<std::pair<Poly, Poly>>* out, int depth);

Poly mod_gcd2(Poly a, Poly b, const Poly& m, int x, int y) {
    a = reduce_mod(a, m, x, y);
    b = reduce_mod(b, m, x, y);
    while (true) {
        if (b.is_zero()) return a;
        if (b.degree(y) == 0) return Poly(1);  // nonzero scalar mod m: unit-ish
        if (a.degree(y) < b.degree(y)) std::swap(a, b);
        // make b monic in y modulo m
        Poly lc = b.coeff_of(y, b.degree(y));
        Poly lcinv = inv_mod(lc, m, x);  // may throw SplitNeeded
        Poly bm = reduce_mod(b * lcinv, m, x, y);
        // remainder of a by monic bm
        Poly rem = a;
        while (!rem.is_zero() && rem.degree(y) >= bm.degree(y)) {
            int dr = rem.degree(y);
            Poly cr = rem.coeff_of(y, dr);
            rem = reduce_mod(rem - bm * cr * Poly::variable(y, dr - bm.degree(y)), m, x, y);
            if (rem.degree(y) == dr && !rem.coeff_of(y, dr).is_zero())
                throw Error("internal: modular y-division stuck");
        }
        a = bm;
        b = rem;
    }
}

void mod_gcd_branches(std::vector<Poly> polys, Poly m, int x, int y,
                      std::vector<std::pair<Poly, Poly>>* out, int depth) {
    if (depth > 16) throw Error("dynamic evaluation depth exceeded");
    // drop polynomials that vanish mod m; if a nonzero constant appears the
    // branch is empty (no common root)
    try {
        Poly g;
        bool started = false;
        for (const Poly& p : polys) {
            Poly red = reduce_mod(p, m, x, y);
            if (red.is_zero()) continue;
            if (red.degree(y) == 0) {
                // nonzero element of K[x]/m: invertible unless it shares a factor
                Poly common = uni_gcd(red, m, x);
                if (common.degree(x) > 0 && common.degree(x) < m.degree(x))
                    throw SplitNeeded{common};
                if (common.degree(x) == m.degree(x)) continue;  // actually zero mod m
                out->push_back({m, Poly(1)});
                return;
            }
            if (!started) {
                g = red;
                started = true;
            } else {
                g = mod_gcd2(g, red, m, x, y);
                if (g.degree(y) == 0) { out->push_back({m, Poly(1)}); return; }
            }
        }
        if (!started) {
            out->push_back({m, Poly()});  // every polynomial vanished: all y work
            return;
        }
        out->push_back({m, g});
    } catch (const SplitNeeded& sp) {
        Poly m1 = sp.factor.mul_scalar(GQ(1) / sp.factor.lc_global());
        Poly q = m.divexact(m1);
        q = q.mul_scalar(GQ(1) / q.lc_global());
        mod_gcd_branches(polys, m1, x, y, out, depth + 1);
        if (q.degree(x) > 0) mod_gcd_branches(polys, q, x, y, out, depth + 1);
    }
}

// Try small rational roots of a univariate polynomial.
std::optional<GQ> small_rational_root(const Poly& p, int var) {
    static const long nums[] = {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 12, -12};
    static const long dens[] = {1, 2, 3, 4};
    for (long d : dens)
        for (long n : nums) {
            GQ v = GQ::fraction(n, d);
            if (p.eval({{var, v}}).is_zero()) return v;
        }
    return std::nullopt;
}

SystemDecision nonempty_with(const GQ& x0, const GQ& y0) {
    SystemDecision d;
    d.status = SystemStatus::NonEmpty;
    d.witness = std::make_pair(x0, y0);
    d.detail = "solution at (" + x0.str() + ", " + y0.str() + ")";
    return d;
}

SystemDecision decide_impl(std::vector<Poly> polys, int vx, int vy, int depth) {
    SystemDecision dec;
    if (depth > 12) {
        dec.detail = "recursion depth exceeded";
        return dec;
    }
    // normalize: drop zeros, detect constants
    std::vector<Poly> sys;
    for (Poly& p : polys) {
        if (p.is_zero()) continue;
        if (p.is_constant()) {
            dec.status = SystemStatus::Empty;
            dec.detail = "contains a nonzero constant";
            return dec;
        }
        p = p.mul_scalar(GQ(1) / p.lc_global());
        bool dup = false;
        for (const Poly& q : sys)
            if (q == p) { dup = true; break; }
        if (!dup) sys.push_back(p);
    }
    if (sys.empty()) return nonempty_with(GQ(0), GQ(0));

    std::vector<Poly> b0, b1;
    for (const Poly& p : sys)
        (p.degree(vy) == 0 ? b0 : b1).push_back(p);

    if (b1.empty()) {
        Poly g;
        for (const Poly& p : b0) g = g.is_zero() ? p : uni_gcd(g, p, vx);
        if (g.is_constant()) {
            dec.status = SystemStatus::Empty;
            dec.detail = "coprime univariate constraints";
            return dec;
        }
        auto root = small_rational_root(g, vx);
        if (root) return nonempty_with(*root, GQ(0));
        dec.status = SystemStatus::NonEmpty;
        dec.detail = "univariate system with algebraic solutions (" + g.str() + " = 0)";
        return dec;
    }

    // common factor of everything?
    Poly h = sys[0];
    for (size_t i = 1; i < sys.size(); ++i) h = poly_gcd(h, sys[i]);
    if (!h.is_constant()) {
        // any zero of h is a common zero
        for (long xa = -4; xa <= 4; ++xa) {
            GQ x0(xa);
            Poly hy = h.substitute({{vx, Poly(x0)}});
            if (hy.is_zero()) return nonempty_with(x0, GQ(0));
            if (hy.degree(vy) == 0) continue;
            auto r = small_rational_root(hy, vy);
            if (r) return nonempty_with(x0, *r);
        }
        dec.status = SystemStatus::NonEmpty;
        dec.detail = "common factor " + h.str();
        return dec;
    }

    // pick minimal y-degree element of b1
    size_t pi = 0;
    for (size_t i = 1; i < b1.size(); ++i)
        if (b1[i].degree(vy) < b1[pi].degree(vy)) pi = i;
    Poly p = b1[pi];

    // resultants with the others
    std::vector<Poly> rs;
    for (size_t i = 0; i < b1.size(); ++i) {
        if (i == pi) continue;
        Poly r = resultant(p, b1[i], vy);
        if (r.is_zero()) {
            // shared positive-degree factor: split V(p,q) = V(g) u V(p/g,q/g)
            Poly g = poly_gcd(p, b1[i]);
            std::vector<Poly> with_g{g};
            std::vector<Poly> without;
            for (size_t j = 0; j < b1.size(); ++j)
                if (j != pi && j != i) without.push_back(b1[j]);
            for (const Poly& q : b0) without.push_back(q);
            with_g.insert(with_g.end(), without.begin(), without.end());
            SystemDecision da = decide_impl(with_g, vx, vy, depth + 1);
            if (da.status != SystemStatus::Empty) return da;
            std::vector<Poly> rest{p.divexact(g), b1[i].divexact(g)};
            rest.insert(rest.end(), without.begin(), without.end());
            return decide_impl(rest, vx, vy, depth + 1);
        }
        rs.push_back(r);
    }
    for (const Poly& q : b0) rs.push_back(q);

    // candidates for x in the branch where lc_y(p) != 0
    Poly u;
    for (const Poly& r : rs) u = u.is_zero() ? r : uni_gcd(u, r, vx);
    if (rs.empty()) u = Poly();  // single equation: every x works

    bool branchA_nonempty = false;
    SystemDecision branchA_result;
    if (rs.empty()) {
        // single bivariate equation p = 0 with lc != 0 somewhere: solutions exist
        for (long xa = -4; xa <= 4 && !branchA_nonempty; ++xa) {
            GQ x0(xa);
            if (p.coeff_of(vy, p.degree(vy)).eval({{vx, x0}}).is_zero()) continue;
            Poly py = p.substitute({{vx, Poly(x0)}});
            auto r = small_rational_root(py, vy);
            if (r) { branchA_result = nonempty_with(x0, *r); branchA_nonempty = true; }
        }
        if (!branchA_nonempty) {
            branchA_result.status = SystemStatus::NonEmpty;
            branchA_result.detail = "plane curve " + p.str() + " = 0";
            branchA_nonempty = true;
        }
    } else if (!u.is_constant() && !u.is_zero()) {
        // squarefree part
        Poly usf = u.divexact(uni_gcd(u, u.derivative(vx), vx));
        std::vector<std::pair<Poly, Poly>> branches;
        mod_gcd_branches(b1, usf, vx, vy, &branches, 0);
        for (const auto& [modl, g] : branches) {
            if (!g.is_zero() && g.degree(vy) == 0) continue;  // no common y-root here
            // also every b0 element must vanish mod this modulus
            bool b0ok = true;
            for (const Poly& q : b0)
                if (!uni_rem(q, modl, vx).is_zero()) { b0ok = false; break; }
            if (!b0ok) continue;
            // solutions above the roots of modl
            auto x0 = small_rational_root(modl, vx);
            if (x0) {
                Poly gy = g.is_zero() ? Poly() : g.substitute({{vx, Poly(*x0)}});
                if (g.is_zero()) {
                    // all b1 vanish mod modl: pick p's y-root at x0
                    gy = p.substitute({{vx, Poly(*x0)}});
                }
                if (gy.is_zero()) {
                    branchA_result = nonempty_with(*x0, GQ(0));
                    branchA_nonempty = true;
                    break;
                }
                auto y0 = small_rational_root(gy, vy);
                if (y0) {
                    branchA_result = nonempty_with(*x0, *y0);
                    branchA_nonempty = true;
                    break;
                }
            }
            branchA_result.status = SystemStatus::NonEmpty;
            branchA_result.detail = "solutions above " + modl.str() + " = 0";
            branchA_nonempty = true;
            break;
        }
    }
    if (branchA_nonempty) return branchA_result;

    // branch B: lc_y(p) = 0
    Poly lc = p.coeff_of(vy, p.degree(vy));
    std::vector<Poly> sysb;
    for (size_t i = 0; i < b1.size(); ++i)
        if (i != pi) sysb.push_back(b1[i]);
    for (const Poly& q : b0) sysb.push_back(q);
    sysb.push_back(lc);
    Poly trunc = p - lc * Poly::variable(vy, p.degree(vy));
    if (!trunc.is_zero()) sysb.push_back(trunc);
    SystemDecision db = decide_impl(sysb, vx, vy, depth + 1);
    if (db.status != SystemStatus::Empty) return db;

    dec.status = SystemStatus::Empty;
    dec.detail = "no chart solutions";
    return dec;
}

} // namespace

SystemDecision decide_bivariate_empty(std::vector<Poly> polys, int vx, int vy) {
    return decide_impl(std::move(polys), vx, vy, 0);
}

} // namespace nal

#include "nal/identities.hpp"

#include <array>
#include <functional>
#include <mutex>
#include <sstream>

#include "nal/errors.hpp"
#include "nal/invariants.hpp"

namespace nal {

std::string identity_name(IdentityName id) {
    switch (id) {
        case IdentityName::Commutative: return "commutative";
        case IdentityName::Anticommutative: return "anticommutative";
        case IdentityName::Associative: return "associative";
        case IdentityName::Jordan: return "jordan";
        case IdentityName::LeftBicommutative: return "left_bicommutative";
        case IdentityName::RightBicommutative: return "right_bicommutative";
        case IdentityName::Bicommutative: return "bicommutative";
        case IdentityName::Metabelian: return "metabelian";
        case IdentityName::FourAssoc: return "four_assoc";
    }
    return "?";
}

std::optional<IdentityName> identity_from_string(const std::string& s) {
    for (IdentityName id : {IdentityName::Commutative, IdentityName::Anticommutative,
                            IdentityName::Associative, IdentityName::Jordan,
                            IdentityName::LeftBicommutative, IdentityName::RightBicommutative,
                            IdentityName::Bicommutative, IdentityName::Metabelian,
                            IdentityName::FourAssoc})
        if (identity_name(id) == s) return id;
    return std::nullopt;
}

std::string IdentityCheck::str() const {
    switch (outcome) {
        case Verified: return "verified";
        case ParameterConditional:
            return "parameter-conditional on " + critical.str();
        case Refuted: {
            std::ostringstream os;
            os << "refuted at (";
            for (size_t i = 0; i < witness.size(); ++i) {
                if (i) os << ", ";
                os << "[";
                for (size_t j = 0; j < witness[i].size(); ++j) {
                    if (j) os << ",";
                    os << witness[i][j].str();
                }
                os << "]";
            }
            os << ")";
            return os.str();
        }
    }
    return "?";
}

namespace {

// Fixed pool of generic coordinate indeterminates (not parseable in catalog
// files, so they cannot collide with user parameters).
int generic_var(int slot, int coord) {
    static std::mutex mu;
    static std::vector<std::vector<int>> pool;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(pool.size()) <= slot) pool.emplace_back();
    auto& row = pool[static_cast<size_t>(slot)];
    while (static_cast<int>(row.size()) <= coord)
        row.push_back(symbols::fresh("g" + std::to_string(slot) + "_"));
    return row[static_cast<size_t>(coord)];
}

std::vector<Scalar> generic_vector(int slot, int n) {
    std::vector<Scalar> v(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        v[static_cast<size_t>(k)] = Scalar::variable(generic_var(slot, k));
    return v;
}

using Vec = std::vector<Scalar>;

Vec vsub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool vzero(const Vec& a) {
    for (const Scalar& s : a)
        if (!s.is_zero()) return false;
    return true;
}

// The identity as a discrepancy function of its argument slots.
struct IdentityDef {
    int arity;
    std::function<Vec(const StructureTensor&, const std::vector<Vec>&)> eval;
    bool multilinear;
};

IdentityDef identity_def(IdentityName id) {
    auto mul = [](const StructureTensor& a, const Vec& x, const Vec& y) {
        return a.multiply(x, y);
    };
    switch (id) {
        case IdentityName::Commutative:
            return {2, [mul](const StructureTensor& a, const std::vector<Vec>& v) {
                        return vsub(mul(a, v[0], v[1]), mul(a, v[1], v[0]));
                    }, true};
        case IdentityName::Anticommutative:
            return {2, [mul](const StructureTensor& a, const std::vector<Vec>& v) {
                        Vec s = mul(a, v[0], v[1]), t = mul(a, v[1], v[0]);
                        for (size_t i = 0; i < s.size(); ++i) s[i] += t[i];
                        return s;
                    }, true};
        case IdentityName::Associative:
            return {3, [mul](const StructureTensor& a, const std::vector<Vec>& v) {
                        return vsub(mul(a, mul(a, v[0], v[1]), v[2]),
                                    mul(a, v[0], mul(a, v[1], v[2])));
                    }, true};
        case IdentityName::Jordan:
            // (x^2 y) x - x^2 (y x); degree 4 in two slots (not multilinear)
            return {2, [mul](const StructureTensor& a, const std::vector<Vec>& v) {
                        Vec x2 = mul(a, v[0], v[0]);
                        return vsub(mul(a, mul(a, x2, v[1]), v[0]),
                                    mul(a, x2, mul(a, v[1], v[0])));
                    }, false};
        case IdentityName::LeftBicommutative:
            return {3, [mul](const StructureTensor& a, const std::vector<Vec>& v) {
                        return vsub(mul(a, v[0], mul(a, v[1], v[2])),
                                    mul(a, v[1], mul(a, v[0], v[2])));
                    }, true};
        case IdentityName::RightBicommutative:
            return {3, [mul](const StructureTensor& a, const std::vector<Vec>& v) {
                        return vsub(mul(a, mul(a, v[0], v[1]), v[2]),
                                    mul(a, mul(a, v[0], v[2]), v[1]));
                    }, true};
        case IdentityName::Metabelian:
            return {4, [mul](const StructureTensor& a, const std::vector<Vec>& v) {
                        return mul(a, mul(a, v[0], v[1]), mul(a, v[2], v[3]));
                    }, true};
        case IdentityName::FourAssoc:
            // on the symmetrized product
            return {4, [](const StructureTensor& a, const std::vector<Vec>& v) {
                        StructureTensor s = a.jordan_product();
                        Vec ab = s.multiply(v[0], v[1]);
                        return vsub(s.multiply(s.multiply(ab, v[2]), v[3]),
                                    s.multiply(s.multiply(ab, v[3]), v[2]));
                    }, true};
        case IdentityName::Bicommutative:
            throw Error("bicommutative is checked as left and right");
    }
    throw Error("unknown identity");
}

std::vector<Vec> basis_vectors(int n) {
    std::vector<Vec> b;
    for (int i = 0; i < n; ++i) {
        Vec v(static_cast<size_t>(n));
        v[static_cast<size_t>(i)] = Scalar(1);
        b.push_back(std::move(v));
    }
    return b;
}

// Scan basis tuples (and small combinations for the Jordan identity) for a
// concrete refutation.
bool find_witness(const StructureTensor& a, const IdentityDef& def,
                  IdentityCheck* out) {
    int n = a.dim();
    std::vector<Vec> candidates = basis_vectors(n);
    if (!def.multilinear)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Vec v(static_cast<size_t>(n));
                v[static_cast<size_t>(i)] = Scalar(1);
                v[static_cast<size_t>(j)] = Scalar(1);
                candidates.push_back(std::move(v));
            }
    std::vector<size_t> idx(static_cast<size_t>(def.arity), 0);
    while (true) {
        std::vector<Vec> args;
        for (int s = 0; s < def.arity; ++s) args.push_back(candidates[idx[static_cast<size_t>(s)]]);
        Vec d = def.eval(a, args);
        if (!vzero(d)) {
            out->witness = args;
            out->discrepancy = d;
            return true;
        }
        int s = def.arity - 1;
        while (s >= 0) {
            if (++idx[static_cast<size_t>(s)] < candidates.size()) break;
            idx[static_cast<size_t>(s)] = 0;
            --s;
        }
        if (s < 0) return false;
    }
}

IdentityCheck check_one(const StructureTensor& a, IdentityName id) {
    IdentityDef def = identity_def(id);
    std::vector<Vec> args;
    std::set<int> generic_ids;
    for (int s = 0; s < def.arity; ++s) {
        args.push_back(generic_vector(s, a.dim()));
        for (int k = 0; k < a.dim(); ++k) generic_ids.insert(generic_var(s, k));
    }
    Vec d = def.eval(a, args);

    IdentityCheck result;
    if (vzero(d)) return result;

    // Classify: coefficients of the discrepancy as polynomials in the
    // generic coordinates; coefficients live in the parameter ring.
    bool any_settled = false;
    Poly first_unsettled;
    for (const Scalar& entry : d) {
        if (entry.is_zero()) continue;
        Poly num = entry.num();
        // iterate monomials; group by the generic part
        std::map<Mono, Poly, MonoOrder> grouped;
        for (const auto& [m, c] : num.terms()) {
            Mono gen, par;
            for (const auto& [v, e] : m) {
                if (generic_ids.count(v)) gen.emplace_back(v, e);
                else par.emplace_back(v, e);
            }
            Poly contrib;
            contrib.add_term(par, c);
            grouped[gen] += contrib;
        }
        for (const auto& [gen, coeff] : grouped) {
            if (coeff.is_zero()) continue;
            if (coeff.is_constant() || a.constraints().implies_nonzero(coeff)) {
                any_settled = true;
            } else if (first_unsettled.is_zero()) {
                first_unsettled = coeff;
            }
        }
    }
    if (!any_settled && !first_unsettled.is_zero()) {
        result.outcome = IdentityCheck::ParameterConditional;
        result.critical = first_unsettled;
        return result;
    }
    result.outcome = IdentityCheck::Refuted;
    if (!find_witness(a, def, &result)) {
        // fall back: keep generic witness (should not happen)
        result.witness = args;
        result.discrepancy = d;
    }
    return result;
}

} // namespace

IdentityCheck check_identity(const StructureTensor& a, IdentityName id) {
    if (id == IdentityName::Bicommutative) {
        IdentityCheck left = check_identity(a, IdentityName::LeftBicommutative);
        if (left.outcome != IdentityCheck::Verified) return left;
        return check_identity(a, IdentityName::RightBicommutative);
    }
    if (id == IdentityName::Jordan) {
        IdentityCheck comm = check_identity(a, IdentityName::Commutative);
        if (comm.outcome != IdentityCheck::Verified) return comm;
    }
    return check_one(a, id);
}

namespace {

// Full linearization of the Jordan identity: sum over the placements of
// x1,x2,x3 into the three x slots of (x^2 y) x - x^2 (y x).
std::vector<Scalar> jordan_linearization(const StructureTensor& a,
                                         const std::vector<std::vector<Scalar>>& v) {
    const auto& x1 = v[0];
    const auto& x2 = v[1];
    const auto& x3 = v[2];
    const auto& y = v[3];
    std::vector<Scalar> acc(static_cast<size_t>(a.dim()));
    const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::array<const std::vector<Scalar>*, 3> xs{&x1, &x2, &x3};
    for (const auto& p : perms) {
        auto sq = a.multiply(*xs[static_cast<size_t>(p[0])], *xs[static_cast<size_t>(p[1])]);
        auto lhs = a.multiply(a.multiply(sq, y), *xs[static_cast<size_t>(p[2])]);
        auto rhs = a.multiply(sq, a.multiply(y, *xs[static_cast<size_t>(p[2])]));
        for (size_t k = 0; k < acc.size(); ++k) acc[k] += lhs[k] - rhs[k];
    }
    return acc;
}

} // namespace

bool check_identity_bruteforce(const StructureTensor& a, IdentityName id) {
    if (id == IdentityName::Bicommutative)
        return check_identity_bruteforce(a, IdentityName::LeftBicommutative) &&
               check_identity_bruteforce(a, IdentityName::RightBicommutative);
    int n = a.dim();
    std::vector<Vec> basis = basis_vectors(n);
    if (id == IdentityName::Jordan) {
        if (!check_identity_bruteforce(a, IdentityName::Commutative)) return false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        auto d = jordan_linearization(
                            a, {basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)],
                                basis[static_cast<size_t>(k)], basis[static_cast<size_t>(l)]});
                        if (!vzero(d)) return false;
                    }
        return true;
    }
    IdentityDef def = identity_def(id);
    std::vector<size_t> idx(static_cast<size_t>(def.arity), 0);
    while (true) {
        std::vector<Vec> args;
        for (int s = 0; s < def.arity; ++s) args.push_back(basis[idx[static_cast<size_t>(s)]]);
        if (!vzero(def.eval(a, args))) return false;
        int s = def.arity - 1;
        while (s >= 0) {
            if (++idx[static_cast<size_t>(s)] < basis.size()) break;
            idx[static_cast<size_t>(s)] = 0;
            --s;
        }
        if (s < 0) return true;
    }
}

std::string variety_bit_name(VarietyBit b) {
    switch (b) {
        case VarietyBit::MetabelianCommutative: return "metabelian-commutative";
        case VarietyBit::CommutativeAssociative: return "commutative-associative";
        case VarietyBit::Jordan: return "jordan";
        case VarietyBit::DerivedCommutativeAssociative: return "derived-commutative-associative";
        case VarietyBit::DerivedJordan: return "derived-jordan";
        case VarietyBit::Bicommutative: return "bicommutative";
        case VarietyBit::BicommutativePlus: return "bicommutative-plus";
    }
    return "?";
}

std::set<VarietyBit> variety_membership(const StructureTensor& a) {
    // generic-point semantics: a parameter-conditional identity fails for
    // transcendental parameter values, so the bit is simply not set
    auto verified = [&a](IdentityName id) {
        return check_identity(a, id).outcome == IdentityCheck::Verified;
    };
    std::set<VarietyBit> bits;
    bool comm = verified(IdentityName::Commutative);
    if (verified(IdentityName::LeftBicommutative) &&
        verified(IdentityName::RightBicommutative))
        bits.insert(VarietyBit::Bicommutative);
    if (comm) {
        if (verified(IdentityName::Metabelian))
            bits.insert(VarietyBit::MetabelianCommutative);
        if (verified(IdentityName::Associative))
            bits.insert(VarietyBit::CommutativeAssociative);
        if (verified(IdentityName::Jordan)) bits.insert(VarietyBit::Jordan);
        if (verified(IdentityName::FourAssoc))
            bits.insert(VarietyBit::BicommutativePlus);
        Subalgebra derived = derived_subalgebra(a);
        auto sver = [&derived](IdentityName id) {
            return check_identity(derived.induced, id).outcome ==
                   IdentityCheck::Verified;
        };
        if (derived.induced.dim() == 0 ||
            (sver(IdentityName::Commutative) && sver(IdentityName::Associative)))
            bits.insert(VarietyBit::DerivedCommutativeAssociative);
        if (derived.induced.dim() == 0 ||
            (sver(IdentityName::Commutative) && sver(IdentityName::Jordan)))
            bits.insert(VarietyBit::DerivedJordan);
    }
    return bits;
}

} // namespace nal

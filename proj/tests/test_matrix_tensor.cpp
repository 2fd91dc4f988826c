#include <doctest.h>

#include <random>

#include "nal/catalog.hpp"
#include "nal/errors.hpp"
#include "nal/expr_parser.hpp"
#include "nal/invariants.hpp"
#include "nal/tensor.hpp"

using namespace nal;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

std::vector<Scalar> vec(std::initializer_list<long> v) {
    std::vector<Scalar> r;
    for (long x : v) r.emplace_back(x);
    return r;
}

Matrix random_invertible(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> coef(-3, 3);
    while (true) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = Scalar(coef(rng));
        if (!m.det().is_zero()) return m;
    }
}

} // namespace

TEST_CASE("matrix basics") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 10; ++it) {
        Matrix m = random_invertible(rng, 3);
        CHECK(m * m.inverse() == Matrix::identity(3));
    }
    Matrix sing(2, 2);
    sing.at(0, 0) = Scalar(1);
    sing.at(1, 0) = Scalar(2);
    CHECK_THROWS_AS(sing.inverse(), SingularMatrix);
    CHECK(sing.rank() == 1);
}

TEST_CASE("multiply: bilinear expansion") {
    StructureTensor m03 = cat().entry("M03").tensor;
    // e1*e2 = e3
    CHECK(m03.multiply(vec({1, 0, 0}), vec({0, 1, 0})) == vec({0, 0, 1}));
    // (e1+e2)*e1 = e2 + e3
    CHECK(m03.multiply(vec({1, 1, 0}), vec({1, 0, 0})) == vec({0, 1, 1}));
    // 0*y = 0
    CHECK(m03.multiply(vec({0, 0, 0}), vec({1, 1, 1})) == vec({0, 0, 0}));
    CHECK_THROWS_AS(m03.multiply(vec({1, 0}), vec({1, 0, 0})), DimensionMismatch);
}

TEST_CASE("change_basis is a right action and fixes nothing it should not") {
    StructureTensor j05 = cat().entry("J05").tensor;
    CHECK(j05.change_basis(Matrix::identity(3)) == j05);
    std::mt19937_64 rng(23);
    for (int it = 0; it < 8; ++it) {
        Matrix p = random_invertible(rng, 3), q = random_invertible(rng, 3);
        StructureTensor lhs = j05.change_basis(p).change_basis(q);
        StructureTensor rhs = j05.change_basis(q * p);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("M04 reciprocal witness by direct expansion") {
    std::map<std::string, int> ids{{"alpha", symbols::intern("alpha")}};
    StructureTensor m04 = cat().entry("M04").tensor;
    Matrix p = Matrix::from_rows({
        parse_vector_expr("e2", ids, 3),
        parse_vector_expr("e1", ids, 3),
        parse_vector_expr("1/alpha*e3", ids, 3),
    });
    StructureTensor target = cat().instantiate(
        "M04", {{"alpha", parse_scalar_expr("1/alpha", ids)}});
    CHECK(m04.change_basis(p) == target);
}

TEST_CASE("jordan product correspondences") {
    // B01+ = J02 with the exact 1/2 convention
    CHECK(cat().entry("B01").tensor.jordan_product() == cat().entry("J02").tensor);
    // G00+ = zero algebra
    CHECK(cat().entry("G00").tensor.jordan_product().is_zero());
    // B04+ = J05: half((1+a) + (1-a)) = 1
    CHECK(cat().entry("B04").tensor.jordan_product() == cat().entry("J05").tensor);
    // footnote rescaling: B12+ under e3 -> 2e3 is A24^1
    Matrix twice = Matrix::identity(3);
    twice.at(2, 2) = Scalar(2);
    StructureTensor b12p = cat().entry("B12").tensor.jordan_product();
    CHECK(b12p.change_basis(twice) ==
          cat().instantiate("A24", {{"alpha", Scalar(1)}}));
}

TEST_CASE("opposite") {
    // opposite(B07^g) = B08^{-g} entrywise
    int gamma = symbols::intern("gamma");
    StructureTensor lhs = cat().entry("B07").tensor.opposite();
    StructureTensor rhs =
        cat().instantiate("B08", {{"gamma", -Scalar::variable(gamma)}});
    CHECK(lhs == rhs);
    // opposite of a commutative algebra is itself
    StructureTensor j12 = cat().entry("J12").tensor;
    CHECK(j12.opposite() == j12);
    // opposite is an involution
    StructureTensor b10 = cat().entry("B10").tensor;
    CHECK(b10.opposite().opposite() == b10);
    // opposite(B12) = B13 entrywise
    CHECK(cat().entry("B12").tensor.opposite() == cat().entry("B13").tensor);
    // jordan_product(opposite(A)) = jordan_product(A) on every entry
    for (const auto& name : cat().entry_names()) {
        const StructureTensor& t = cat().entry(name).tensor;
        CHECK(t.opposite().jordan_product() == t.jordan_product());
    }
}

TEST_CASE("commutative entries multiply symmetrically on random vectors") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (const auto& name : cat().entry_names()) {
        const CatalogEntry& e = cat().entry(name);
        if (e.symmetry != Symmetry::Commutative) continue;
        std::vector<Scalar> x, y;
        for (int k = 0; k < e.dim; ++k) {
            x.emplace_back(coef(rng));
            y.emplace_back(coef(rng));
        }
        CHECK(e.tensor.multiply(x, y) == e.tensor.multiply(y, x));
    }
}

TEST_CASE("fingerprints are invariant under random basis changes") {
    std::mt19937_64 rng(99);
    // deep check on a spread of entries
    for (const std::string name :
         {"M01", "M04", "J05", "J12", "Jcal05", "A21", "B06", "B16", "G00"}) {
        StructureTensor t = cat().entry(name).tensor;
        if (!t.params().empty()) {
            std::map<int, Scalar> bind;
            for (int p : t.params()) bind[p] = Scalar(3);
            t = t.substitute(bind);
        }
        Fingerprint fp = fingerprint(t);
        for (int it = 0; it < 20; ++it) {
            Matrix p = random_invertible(rng, t.dim());
            CHECK(fingerprint(t.change_basis(p)) == fp);
        }
    }
    // full catalog sweep with a smaller matrix budget
    for (const auto& name : cat().entry_names()) {
        StructureTensor t = cat().entry(name).tensor;
        if (!t.params().empty()) {
            std::map<int, Scalar> bind;
            for (int p : t.params()) bind[p] = Scalar(3);
            try {
                t = t.substitute(bind);
            } catch (const ConstraintViolated&) {
                continue;
            }
        }
        Fingerprint fp = fingerprint(t);
        for (int it = 0; it < 3; ++it) {
            Matrix p = random_invertible(rng, t.dim());
            CHECK(fingerprint(t.change_basis(p)) == fp);
        }
    }
}

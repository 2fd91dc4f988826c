#include <doctest.h>

#include <random>

#include "nal/catalog.hpp"
#include "nal/invariants.hpp"
#include "nal/report.hpp"

using namespace nal;

namespace {
const Catalog& cat() { return Catalog::builtin(); }
}

TEST_CASE("derived subalgebra") {
    // M04: dim 2, induced multiplication zero
    Subalgebra m04 = derived_subalgebra(cat().entry("M04").tensor);
    CHECK(m04.induced.dim() == 2);
    CHECK(m04.induced.is_zero());
    // A01: dim 2, induced = Jfrak01 on the nose
    Subalgebra a01 = derived_subalgebra(cat().entry("A01").tensor);
    CHECK(a01.induced.dim() == 2);
    CHECK(derived_iso_class(a01.induced) == "Jfrak01");
    // Jcal03: dim 2, induced = Jfrak04
    Subalgebra jc3 = derived_subalgebra(cat().entry("Jcal03").tensor);
    CHECK(jc3.induced.dim() == 2);
    CHECK(derived_iso_class(jc3.induced) == "Jfrak04");
}

TEST_CASE("derived class survives a random basis change") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto random_invertible = [&rng, &coef](int n) {
        while (true) {
            Matrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m.at(i, j) = Scalar(coef(rng));
            if (!m.det().is_zero()) return m;
        }
    };
    for (const std::string name : {"A01", "A05", "A13", "A21", "Jcal01", "M04"}) {
        StructureTensor t = cat().entry(name).tensor;
        std::map<int, Scalar> bind;
        for (int p : t.params()) bind[p] = Scalar(5);
        t = t.substitute(bind);
        auto base = derived_iso_class(derived_subalgebra(t).induced);
        for (int it = 0; it < 5; ++it) {
            StructureTensor moved = t.change_basis(random_invertible(3));
            CHECK(derived_iso_class(derived_subalgebra(moved).induced) == base);
        }
    }
}

TEST_CASE("annihilator") {
    SubspaceResult m01 = annihilator(cat().entry("M01").tensor);
    CHECK(m01.dim == 2);  // span{e2, e3}
    SubspaceResult m02 = annihilator(cat().entry("M02").tensor);
    CHECK(m02.dim == 1);  // span{e3}
    CHECK(annihilator(StructureTensor::zero(3)).dim == 3);
}

TEST_CASE("derivation dimensions quoted in the geometric proofs") {
    CHECK(derivation_algebra(cat().entry("J07").tensor).dim == 0);
    CHECK(derivation_algebra(cat().entry("M07").tensor).dim == 2);
    CHECK(derivation_algebra(cat().entry("G00").tensor).dim == 6);
    CHECK(orbit_dimension(cat().entry("M07").tensor) == 7);
    CHECK(orbit_dimension(cat().entry("J07").tensor) == 9);
    CHECK(orbit_dimension(StructureTensor::zero(3)) == 0);
}

TEST_CASE("derivation basis closes under commutator") {
    for (const std::string name : {"M04", "M07", "G00", "J12", "B16", "Jcal01"}) {
        StructureTensor t = cat().entry(name).tensor;
        std::map<int, Scalar> bind;
        for (int p : t.params()) bind[p] = Scalar(2);
        t = t.substitute(bind);
        CHECK(derivations_close(derivation_algebra(t)));
    }
}

TEST_CASE("derivation solver agrees with the naive dense solver") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int it = 0; it < 50; ++it) {
        StructureTensor t(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) t.at(i, j, k) = Scalar(coef(rng));
        CHECK(derivation_algebra(t).dim == derivation_dimension_naive(t));
    }
}

TEST_CASE("family component dimensions") {
    auto fd_m04 = family_component_dimension(sampled_tensors(cat(), "M04"), 1);
    CHECK(fd_m04.dimension == 8);
    CHECK(fd_m04.generic_der_dim == 2);
    auto fd_a01 = family_component_dimension(sampled_tensors(cat(), "A01"), 3);
    CHECK(fd_a01.dimension == 12);
    auto fd_jcal01 = family_component_dimension(sampled_tensors(cat(), "Jcal01"), 1);
    CHECK(fd_jcal01.dimension == 10);
    CHECK(orbit_dimension(cat().entry("J14").tensor) == 3);
    CHECK_THROWS_AS(family_component_dimension({}, 1), AllSamplesDegenerate);
}

TEST_CASE("fingerprints separate and coincide as the tables demand") {
    Fingerprint f1 = fingerprint(cat().entry("M01").tensor);
    Fingerprint f2 = fingerprint(cat().entry("M02").tensor);
    auto diff = f1.first_difference(f2);
    REQUIRE(diff.has_value());
    CHECK(diff->find("dim_annihilator") != std::string::npos);

    StructureTensor a = cat().instantiate("M04", {{"alpha", Scalar(2)}});
    StructureTensor b = cat().instantiate("M04", {{"alpha", Scalar(1) / Scalar(2)}});
    CHECK(fingerprint(a) == fingerprint(b));

    Fingerprint z = fingerprint(StructureTensor::zero(3));
    CHECK(z.dim_derived == 0);
    CHECK(z.identity_bits.size() == 7);
}

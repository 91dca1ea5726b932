#include "doctest.h"
#include "oracles.hpp"

#include "cyclewalk/core.hpp"

using namespace cyclewalk;

TEST_SUITE("core") {

TEST_CASE("kraus family at the endpoints and midpoint") {
    SUBCASE("p = 0 leaves only the identity term") {
        const auto fam = build_kraus_family(0.0);
        CHECK((fam.operators[0] - Mat2::Identity()).norm() == doctest::Approx(0.0));
        CHECK(fam.operators[1].norm() == 0.0);
        CHECK(fam.operators[2].norm() == 0.0);
    }
    SUBCASE("p = 1 gives the two coin projectors") {
        const auto fam = build_kraus_family(1.0);
        CHECK(fam.operators[0].norm() == 0.0);
        Mat2 up = Mat2::Zero(), down = Mat2::Zero();
        up(0, 0) = 1.0;
        down(1, 1) = 1.0;
        CHECK((fam.operators[1] - up).norm() < 1e-15);
        CHECK((fam.operators[2] - down).norm() < 1e-15);
    }
    SUBCASE("p = 0.5 is complete") {
        const auto fam = build_kraus_family(0.5);
        CHECK((fam.completeness() - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(std::abs(fam.operators[0](0, 0) - std::sqrt(0.5)) < 1e-15);
    }
    SUBCASE("out of range rates are rejected") {
        CHECK_THROWS_AS(build_kraus_family(-0.01), DomainError);
        CHECK_THROWS_AS(build_kraus_family(1.01), DomainError);
        CHECK_THROWS_AS(build_kraus_family(std::nan("")), DomainError);
    }
}

TEST_CASE("kraus completeness holds across the rate grid") {
    for (int i = 0; i <= 100; ++i) {
        const auto fam = build_kraus_family(i / 100.0);
        CHECK((fam.completeness() - Mat2::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("kraus channel preserves trace and the identity") {
    oracle::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const double p = rng.uniform();
        const auto fam = build_kraus_family(p);
        const Mat2 b = rng.matrix();
        CHECK(std::abs(fam.apply(b).trace() - b.trace()) < 1e-14);
        CHECK((fam.apply(Mat2::Identity()) - Mat2::Identity()).norm() < 1e-14);
    }
}

TEST_CASE("hadamard coins") {
    const double h = 1.0 / std::sqrt(2.0);
    SUBCASE("k = 0 is the plain hadamard") {
        const auto c = hadamard_coin_momentum(0, 5);
        CHECK((c.entries - hadamard_coin().entries).norm() < 1e-15);
        CHECK(c.momentum == 0);
        CHECK_FALSE(hadamard_coin().momentum.has_value());
    }
    SUBCASE("k = N/2 negates the plain hadamard") {
        const auto c = hadamard_coin_momentum(3, 6);
        CHECK((c.entries + hadamard_coin().entries).norm() < 1e-15);
    }
    SUBCASE("k = 1, N = 4 first row") {
        const auto c = hadamard_coin_momentum(1, 4);
        CHECK(std::abs(c.entries(0, 0) - Complex(0, -h)) < 1e-15);
        CHECK(std::abs(c.entries(0, 1) - Complex(0, -h)) < 1e-15);
        CHECK(std::abs(c.entries(1, 0) - Complex(0, h)) < 1e-15);
        CHECK(std::abs(c.entries(1, 1) - Complex(0, -h)) < 1e-15);
    }
    SUBCASE("unitary for every k, N <= 64") {
        for (int n = 2; n <= 64; ++n)
            for (int k = 0; k < n; ++k) {
                const auto c = hadamard_coin_momentum(k, n);
                CHECK((c.entries * c.entries.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-13);
                CHECK(c.is_unitary());
            }
    }
    SUBCASE("momentum outside [0, N) is rejected") {
        CHECK_THROWS_AS(hadamard_coin_momentum(5, 5), DomainError);
        CHECK_THROWS_AS(hadamard_coin_momentum(-1, 5), DomainError);
    }
}

TEST_CASE("unit roots are exact on quarter turns and periodic") {
    CHECK(unit_root(0, 4) == Complex(1, 0));
    CHECK(unit_root(1, 4) == Complex(0, 1));
    CHECK(unit_root(2, 4) == Complex(-1, 0));
    CHECK(unit_root(3, 4) == Complex(0, -1));
    CHECK(unit_root(-1, 7) == unit_root(6, 7));
    CHECK(unit_root(15, 7) == unit_root(1, 7));
    CHECK(std::abs(unit_root(1, 6) - std::polar(1.0, kPi / 3)) < 1e-15);
}

TEST_CASE("pauli decomposition") {
    SUBCASE("projector on the up coin") {
        Mat2 m = Mat2::Zero();
        m(0, 0) = 1.0;
        const auto v = pauli_decompose(m);
        CHECK(std::abs(v[0] - 0.5) < 1e-15);
        CHECK(std::abs(v[1]) < 1e-15);
        CHECK(std::abs(v[2]) < 1e-15);
        CHECK(std::abs(v[3] - 0.5) < 1e-15);
        CHECK((projector(coin_up()).coeffs() - v.coeffs()).norm() < 1e-15);
    }
    SUBCASE("basis matrices decompose to unit vectors") {
        for (int i = 0; i < 4; ++i) {
            const auto v = pauli_decompose(pauli_basis()[i]);
            for (int j = 0; j < 4; ++j) CHECK(std::abs(v[j] - (i == j ? 1.0 : 0.0)) < 1e-15);
            CHECK((pauli_basis()[i] - oracle::sigma(i)).norm() == 0.0);
        }
    }
    SUBCASE("agrees with the trace formula, round-trips, and trace = 2 v0") {
        oracle::Rng rng(1);
        for (int i = 0; i < 100; ++i) {
            const Mat2 m = rng.matrix();
            const auto v = pauli_decompose(m);
            CHECK((v.coeffs() - oracle::pauli_coeffs(m)).norm() < 1e-14);
            CHECK((pauli_compose(v) - m).cwiseAbs().maxCoeff() < 1e-14);
            CHECK((v.to_matrix() - m).cwiseAbs().maxCoeff() < 1e-14);
            CHECK(std::abs(v.trace() - m.trace()) < 1e-14);
        }
    }
    SUBCASE("hermitian input has real coefficients") {
        oracle::Rng rng(2);
        for (int i = 0; i < 50; ++i) {
            const Mat2 a = rng.matrix();
            const Mat2 h = a + a.adjoint();
            const auto v = pauli_decompose(h);
            for (int j = 0; j < 4; ++j) CHECK(std::abs(v[j].imag()) < 1e-15);
        }
    }
    SUBCASE("projectors of normalized states have v0 = 1/2") {
        for (const Vec2& psi : {coin_up(), coin_down(), coin_balanced()}) {
            CHECK(std::abs(projector(psi)[0] - 0.5) < 1e-15);
        }
    }
}

TEST_CASE("named coins") {
    CHECK(coin_up()(0) == Complex(1, 0));
    CHECK(coin_up()(1) == Complex(0, 0));
    CHECK(coin_down()(1) == Complex(1, 0));
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(coin_balanced()(0) - Complex(0, h)) < 1e-15);
    CHECK(std::abs(coin_balanced()(1) - Complex(h, 0)) < 1e-15);
}

TEST_CASE("walk configuration validation") {
    CHECK_NOTHROW(WalkConfig::make(2, 0.0, coin_up()));
    CHECK_NOTHROW(WalkConfig::make(9, 1.0, coin_balanced()));
    CHECK_THROWS_AS(WalkConfig::make(1, 0.5, coin_up()), DomainError);
    CHECK_THROWS_AS(WalkConfig::make(5, -0.1, coin_up()), DomainError);
    CHECK_THROWS_AS(WalkConfig::make(5, 1.5, coin_up()), DomainError);
    CHECK_THROWS_AS(WalkConfig::make(5, 0.5, Vec2(1.0, 1.0)), DomainError);
    CHECK(WalkConfig::kLaunchPosition == 0);
}

TEST_CASE("hilbert-schmidt inner product") {
    oracle::Rng rng(4);
    const Mat2 a = rng.matrix(), b = rng.matrix();
    CHECK(std::abs(hs_inner(a, b) - (a.adjoint() * b).trace()) < 1e-14);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(hs_inner(pauli_basis()[i], pauli_basis()[j]) - (i == j ? 2.0 : 0.0)) < 1e-15);
}

}  // TEST_SUITE

#include "doctest.h"
#include "oracles.hpp"

#include "cyclewalk/fourier.hpp"

using namespace cyclewalk;

namespace {

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

// Independent construction: build C_k and the channel from scratch, then
// decompose each image with the trace formula.
Mat4 reference_superop(int k, int kp, int n, double p) {
    const double h = 1.0 / std::sqrt(2.0);
    auto coin = [&](int m) {
        const Complex w = std::polar(1.0, -2.0 * kPi * m / n);
        Mat2 c;
        c << w * h, w * h, std::conj(w) * h, -std::conj(w) * h;
        return c;
    };
    const Mat2 ck = coin(k), ckp = coin(kp);
    Mat4 out;
    for (int j = 0; j < 4; ++j) {
        const Mat2 s = oracle::sigma(j);
        Mat2 dephased = s;
        dephased(0, 1) *= (1 - p);
        dephased(1, 0) *= (1 - p);
        out.col(j) = oracle::pauli_coeffs(ck * dephased * ckp.adjoint());
    }
    return out;
}

}  // namespace

TEST_SUITE("fourier") {

TEST_CASE("closed form at k = k' = 0") {
    const double p = 0.3;
    const Mat4 m = superop_closed_form(0, 0, 5, p).matrix;
    Mat4 expected = Mat4::Zero();
    expected(0, 0) = 1;
    expected(1, 3) = 1;
    expected(2, 2) = p - 1;
    expected(3, 1) = 1 - p;
    CHECK(max_abs(m - expected) < 1e-15);
    CHECK(max_abs(superop_definitional(0, 0, 5, p).matrix - expected) < 1e-15);
}

TEST_CASE("p = 1 removes every (1-p) entry") {
    for (int k = 0; k < 6; ++k)
        for (int kp = 0; kp < 6; ++kp) {
            const Mat4 m = superop_closed_form(k, kp, 6, 1.0).matrix;
            // sigma_x and sigma_y are annihilated by complete dephasing.
            CHECK(m.col(1).norm() < 1e-15);
            CHECK(m.col(2).norm() < 1e-15);
        }
}

TEST_CASE("both constructions match an independent reference") {
    oracle::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + rng.below(31);
        const int k = rng.below(n), kp = rng.below(n);
        const double p = rng.uniform();
        const Mat4 ref = reference_superop(k, kp, n, p);
        const auto def = superop_definitional(k, kp, n, p);
        const auto closed = superop_closed_form(k, kp, n, p);
        CHECK(max_abs(def.matrix - ref) < 1e-12);
        CHECK(max_abs(closed.matrix - ref) < 1e-12);
        CHECK(std::abs(closed.c_plus * closed.c_plus + closed.s_plus * closed.s_plus - 1) < 1e-15);
        CHECK(std::abs(closed.c_minus * closed.c_minus + closed.s_minus * closed.s_minus - 1) < 1e-15);
    }
}

TEST_CASE("superoperator acts on matrices as the matrix form predicts") {
    oracle::Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        const int n = 3 + rng.below(10);
        const int k = rng.below(n), kp = rng.below(n);
        const double p = rng.uniform();
        const Mat2 b = rng.matrix();
        const auto op = superop_definitional(k, kp, n, p);
        const Mat2 via_vector = op.apply(pauli_decompose(b)).to_matrix();
        CHECK((via_vector - apply_superop_to_matrix(k, kp, n, p, b)).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("contractivity and the exact norm identity") {
    oracle::Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + rng.below(15);
        const int k = rng.below(n), kp = rng.below(n);
        const double p = rng.uniform();
        const Mat2 b = rng.matrix();
        const double before = b.squaredNorm();
        const double after = apply_superop_to_matrix(k, kp, n, p, b).squaredNorm();
        CHECK(after <= before + 1e-12);
        // <SB,SB> = (1-p)^2 <B,B> + (2p - p^2)(|b11|^2 + |b22|^2)
        const double diag = std::norm(b(0, 0)) + std::norm(b(1, 1));
        CHECK(std::abs(after - ((1 - p) * (1 - p) * before + (2 * p - p * p) * diag)) < 1e-12);
    }
}

TEST_CASE("strict contraction for p > 0 on operands with off-diagonal weight") {
    oracle::Rng rng(15);
    for (int i = 0; i < 20; ++i) {
        const Mat2 b = rng.matrix();
        CHECK(apply_superop_to_matrix(1, 2, 5, 0.3, b).norm() < b.norm() - 1e-6);
    }
}

TEST_CASE("p = 0 preserves the Hilbert-Schmidt norm") {
    oracle::Rng rng(14);
    for (int i = 0; i < 30; ++i) {
        const int n = 3 + rng.below(8);
        const int k = rng.below(n), kp = rng.below(n);
        const Mat2 b = rng.matrix();
        CHECK(std::abs(apply_superop_to_matrix(k, kp, n, 0.0, b).norm() - b.norm()) < 1e-13);
    }
}

TEST_CASE("trace term") {
    const auto initial = projector(coin_up());
    SUBCASE("t = 0 gives one") {
        CHECK(std::abs(trace_term(superop_definitional(1, 2, 5, 0.4), initial, 0) - 1.0) < 1e-15);
    }
    SUBCASE("diagonal pairs conserve the trace") {
        for (int k = 0; k < 5; ++k) {
            const auto op = superop_definitional(k, k, 5, 0.4);
            for (long long t : {1LL, 7LL, 100LL, 500LL}) CHECK(std::abs(trace_term(op, initial, t) - 1.0) < 1e-12);
        }
    }
    SUBCASE("matches explicit operator iteration") {
        const auto op = superop_definitional(1, 3, 7, 0.25);
        Mat2 b = initial.to_matrix();
        for (int t = 1; t <= 20; ++t) {
            b = apply_superop_to_matrix(1, 3, 7, 0.25, b);
            CHECK(std::abs(trace_term(op, initial, t) - b.trace()) < 1e-13);
        }
    }
    SUBCASE("off-diagonal terms decay for odd N") {
        // Pairs with k + k' = 0 mod N and k' - k near N/2 have radius ~0.969 at
        // N = 7, p = 0.5 and need ~580 steps to reach 1e-8; the rest are there by 204.
        for (int k = 0; k < 7; ++k)
            for (int kp = 0; kp < 7; ++kp) {
                if (k == kp) continue;
                const auto op = superop_definitional(k, kp, 7, 0.5);
                CHECK(std::abs(trace_term(op, initial, 600)) < 1e-8);
                const bool slow = (k + kp) % 7 == 0 && std::abs(k - kp) == 3;
                if (!slow) CHECK(std::abs(trace_term(op, initial, 210)) < 1e-8);
            }
        CHECK(std::abs(trace_term(superop_definitional(2, 5, 7, 0.5), initial, 200)) > 1e-3);
    }
    SUBCASE("non-projector input is rejected") {
        const PauliVector bad(Vec4(1.0, 0.0, 0.0, 0.0));
        CHECK_THROWS_AS(trace_term(superop_definitional(0, 1, 4, 0.5), bad, 3), PreconditionError);
    }
}

}  // TEST_SUITE

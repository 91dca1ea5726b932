#pragma once
// Test-only reference computations. Each is written from the defining
// formula and shares no code path with the library routine it checks.

#include "cyclewalk/core.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using cyclewalk::Complex;
using cyclewalk::Mat2;
using cyclewalk::Mat4;

// Deterministic sampler with portable conversions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
    Complex complex() { return {uniform(-1, 1), uniform(-1, 1)}; }
    Mat2 matrix() {
        Mat2 m;
        m << complex(), complex(), complex(), complex();
        return m;
    }

private:
    std::mt19937_64 engine_;
};

inline Mat2 sigma(int i) {
    const Complex I{0, 1};
    Mat2 m;
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -I, I, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

// v_i = (1/2) tr(sigma_i^dagger m), computed with full matrix products.
inline Eigen::Vector4cd pauli_coeffs(const Mat2& m) {
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i) v(i) = 0.5 * (sigma(i).adjoint() * m).trace();
    return v;
}

// U = S (I x H) on C^N x C^2, index 2x + c, coin c=0 moves +1, c=1 moves -1.
inline Eigen::MatrixXcd walk_unitary(int n) {
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd had;
    had << h, h, h, -h;
    Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int x = 0; x < n; ++x) {
        shift(2 * ((x + 1) % n) + 0, 2 * x + 0) = 1.0;
        shift(2 * ((x - 1 + n) % n) + 1, 2 * x + 1) = 1.0;
    }
    Eigen::MatrixXcd coin = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int x = 0; x < n; ++x) coin.block<2, 2>(2 * x, 2 * x) = had;
    return shift * coin;
}

// I_N x A as a dense matrix.
inline Eigen::MatrixXcd lift(const Mat2& a, int n) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int x = 0; x < n; ++x) out.block<2, 2>(2 * x, 2 * x) = a;
    return out;
}

// Dense sum_n U (I x A_n) rho (I x A_n)^dagger U^dagger with the Kraus family written out here.
inline Eigen::MatrixXcd dense_step(const Eigen::MatrixXcd& rho, int n, double p) {
    const Eigen::MatrixXcd u = walk_unitary(n);
    Mat2 a0 = std::sqrt(1 - p) * Mat2::Identity();
    Mat2 a1 = Mat2::Zero();
    a1(0, 0) = std::sqrt(p);
    Mat2 a2 = Mat2::Zero();
    a2(1, 1) = std::sqrt(p);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (const Mat2& a : {a0, a1, a2}) {
        const Eigen::MatrixXcd k = u * lift(a, n);
        out += k * rho * k.adjoint();
    }
    return out;
}

// Simple random walk distribution by enumerating all 2^t paths.
inline std::vector<double> classical_paths(int n, int t) {
    std::vector<double> probs(n, 0.0);
    const std::uint64_t paths = 1ULL << t;
    const double weight = std::ldexp(1.0, -t);
    for (std::uint64_t mask = 0; mask < paths; ++mask) {
        long long x = 0;
        for (int s = 0; s < t; ++s) x += ((mask >> s) & 1) ? 1 : -1;
        probs[((x % n) + n) % n] += weight;
    }
    return probs;
}

// det(l I - M) evaluated directly.
inline Complex char_det(const Mat4& m, Complex l) { return (l * Mat4::Identity() - m).determinant(); }

// sum_{t<tau} A^t by brute force.
inline Mat4 power_sum(const Mat4& a, long long tau) {
    Mat4 sum = Mat4::Zero(), power = Mat4::Identity();
    for (long long t = 0; t < tau; ++t) {
        sum += power;
        power = power * a;
    }
    return sum;
}

}  // namespace oracle

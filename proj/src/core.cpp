#include "cyclewalk/core.hpp"

#include <cmath>
#include <sstream>

namespace cyclewalk {

namespace {
const Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

Vec2 coin_up() { return Vec2(1.0, 0.0); }

Vec2 coin_down() { return Vec2(0.0, 1.0); }

Vec2 coin_balanced() { return Vec2(kI * kInvSqrt2, Complex(kInvSqrt2, 0.0)); }

WalkConfig WalkConfig::make(int n_nodes, double decoherence_rate, const Vec2& initial_coin) {
    WalkConfig cfg;
    cfg.n_nodes = n_nodes;
    cfg.decoherence_rate = decoherence_rate;
    cfg.initial_coin = initial_coin;
    cfg.validate();
    return cfg;
}

void WalkConfig::validate() const {
    if (n_nodes < 2) {
        throw DomainError("n_nodes must be >= 2, got " + std::to_string(n_nodes));
    }
    if (!(decoherence_rate >= 0.0 && decoherence_rate <= 1.0)) {
        std::ostringstream os;
        os << "decoherence_rate must lie in [0,1], got " << decoherence_rate;
        throw DomainError(os.str());
    }
    const double norm = initial_coin.norm();
    if (!(std::abs(norm - 1.0) <= 1e-12)) {
        std::ostringstream os;
        os.precision(17);
        os << "initial_coin must have unit norm, got " << norm;
        throw DomainError(os.str());
    }
}

const std::array<Mat2, 4>& pauli_basis() {
    static const std::array<Mat2, 4> basis = [] {
        std::array<Mat2, 4> b;
        b[0] << 1, 0, 0, 1;
        b[1] << 0, 1, 1, 0;
        b[2] << 0, -kI, kI, 0;
        b[3] << 1, 0, 0, -1;
        return b;
    }();
    return basis;
}

Mat2 PauliVector::to_matrix() const {
    const auto& s = pauli_basis();
    return coeffs_(0) * s[0] + coeffs_(1) * s[1] + coeffs_(2) * s[2] + coeffs_(3) * s[3];
}

PauliVector pauli_decompose(const Mat2& m) {
    // Closed forms of (1/2) tr(sigma_i^dagger m).
    Vec4 v;
    v(0) = 0.5 * (m(0, 0) + m(1, 1));
    v(1) = 0.5 * (m(0, 1) + m(1, 0));
    v(2) = 0.5 * kI * (m(0, 1) - m(1, 0));
    v(3) = 0.5 * (m(0, 0) - m(1, 1));
    return PauliVector(v);
}

Mat2 pauli_compose(const PauliVector& v) { return v.to_matrix(); }

PauliVector projector(const Vec2& psi) { return pauli_decompose(psi * psi.adjoint()); }

Mat2 KrausFamily::apply(const Mat2& b) const {
    Mat2 out = Mat2::Zero();
    for (const auto& a : operators) {
        out.noalias() += a * b * a.adjoint();
    }
    return out;
}

Mat2 KrausFamily::completeness() const {
    Mat2 out = Mat2::Zero();
    for (const auto& a : operators) {
        out.noalias() += a.adjoint() * a;
    }
    return out;
}

KrausFamily build_kraus_family(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "decoherence rate must lie in [0,1], got " << p;
        throw DomainError(os.str());
    }
    const auto& s = pauli_basis();
    KrausFamily family;
    family.rate = p;
    family.operators[0] = std::sqrt(1.0 - p) * s[0];
    family.operators[1] = (std::sqrt(p) / 2.0) * (s[0] + s[3]);
    family.operators[2] = (std::sqrt(p) / 2.0) * (s[0] - s[3]);
    return family;
}

bool CoinMatrix::is_unitary(double tol) const {
    const Mat2 defect = entries.adjoint() * entries - Mat2::Identity();
    return defect.cwiseAbs().maxCoeff() <= tol;
}

CoinMatrix hadamard_coin() {
    CoinMatrix c;
    c.entries << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return c;
}

Complex unit_root(long long m, int n_nodes) {
    long long r = m % n_nodes;
    if (r < 0) r += n_nodes;
    // Exact values at the quarter turns keep symmetric cases symmetric.
    if (r == 0) return {1.0, 0.0};
    if (2 * r == n_nodes) return {-1.0, 0.0};
    if (4 * r == n_nodes) return {0.0, 1.0};
    if (4 * r == 3LL * n_nodes) return {0.0, -1.0};
    const double angle = 2.0 * kPi * static_cast<double>(r) / n_nodes;
    return {std::cos(angle), std::sin(angle)};
}

CoinMatrix hadamard_coin_momentum(int k, int n_nodes) {
    if (n_nodes < 1) {
        throw DomainError("n_nodes must be positive");
    }
    if (k < 0 || k >= n_nodes) {
        throw DomainError("momentum index " + std::to_string(k) + " outside [0, " +
                          std::to_string(n_nodes) + ")");
    }
    const Complex minus = unit_root(-k, n_nodes);
    const Complex plus = unit_root(k, n_nodes);
    CoinMatrix c;
    c.entries << kInvSqrt2 * minus, kInvSqrt2 * minus, kInvSqrt2 * plus, -kInvSqrt2 * plus;
    c.momentum = k;
    return c;
}

Complex hs_inner(const Mat2& a, const Mat2& b) { return (a.adjoint() * b).trace(); }

}  // namespace cyclewalk

#pragma once
/*
 * Core domain types for a Hadamard walk on the N-cycle with coin decoherence.
 *
 * Coin basis ordering: index 0 is j=+1 (the state |1> the walk is usually
 * launched from), index 1 is j=-1. With this ordering the momentum-dressed
 * coin is C_k = diag(e^{-2 pi i k/N}, e^{2 pi i k/N}) H literally.
 *
 * Pauli basis order is (sigma_0, sigma_x, sigma_y, sigma_z).
 */

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace cyclewalk {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr double kPi = 3.14159265358979323846;

// Argument outside the mathematical domain of an operation (bad N, p, k, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input is in-domain but violates an operation's stated precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical self-check failed; carries the offending matrix when there is one.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, Eigen::MatrixXcd payload = {})
        : std::runtime_error(what), payload_(std::move(payload)) {}
    const Eigen::MatrixXcd& payload() const noexcept { return payload_; }

private:
    Eigen::MatrixXcd payload_;
};

// Named coin states. Labels follow the walk's j in {-1,+1}.
Vec2 coin_up();        // |1>
Vec2 coin_down();      // |-1>
Vec2 coin_balanced();  // (|-1> + i|1>)/sqrt(2)

struct WalkConfig {
    // The walker is always launched from node 0; other launch nodes are a
    // cyclic rotation of the result (see rotate_launch in evolution.hpp).
    static constexpr int kLaunchPosition = 0;

    int n_nodes = 0;
    double decoherence_rate = 0.0;
    Vec2 initial_coin = coin_up();

    // Validating constructor; throws DomainError on any invariant violation.
    static WalkConfig make(int n_nodes, double decoherence_rate, const Vec2& initial_coin);

    void validate() const;
};

class PauliVector {
public:
    PauliVector() : coeffs_(Vec4::Zero()) {}
    explicit PauliVector(const Vec4& coeffs) : coeffs_(coeffs) {}

    const Vec4& coeffs() const noexcept { return coeffs_; }
    Complex operator[](int i) const { return coeffs_(i); }

    // trace(M) = 2 v_0
    Complex trace() const { return 2.0 * coeffs_(0); }
    Mat2 to_matrix() const;

private:
    Vec4 coeffs_;
};

// The four basis matrices sigma_0, sigma_x, sigma_y, sigma_z.
const std::array<Mat2, 4>& pauli_basis();

// v_i = (1/2) tr(sigma_i^dagger m)
PauliVector pauli_decompose(const Mat2& m);
Mat2 pauli_compose(const PauliVector& v);

// |psi><psi| in the Pauli basis.
PauliVector projector(const Vec2& psi);

struct KrausFamily {
    std::array<Mat2, 3> operators;
    double rate = 0.0;

    // sum_n A_n B A_n^dagger
    Mat2 apply(const Mat2& b) const;
    // sum_n A_n^dagger A_n, which is the identity for a unital family.
    Mat2 completeness() const;
};

// A_0 = sqrt(1-p) sigma_0, A_1 = sqrt(p)/2 (sigma_0 + sigma_z), A_2 = sqrt(p)/2 (sigma_0 - sigma_z).
KrausFamily build_kraus_family(double p);

struct CoinMatrix {
    Mat2 entries;
    std::optional<int> momentum;

    bool is_unitary(double tol = 1e-13) const;
};

// Plain Hadamard (1/sqrt2)[[1,1],[1,-1]] acting on position space.
CoinMatrix hadamard_coin();

// (1/sqrt2)[[e^{-i2pi k/N}, e^{-i2pi k/N}], [e^{i2pi k/N}, -e^{i2pi k/N}]]
CoinMatrix hadamard_coin_momentum(int k, int n_nodes);

// e^{2 pi i m / N} with m reduced mod N first, so equal residues give identical values.
Complex unit_root(long long m, int n_nodes);

// Hilbert-Schmidt inner product tr(a^dagger b).
Complex hs_inner(const Mat2& a, const Mat2& b);

}  // namespace cyclewalk

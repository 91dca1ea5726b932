#include "cyclewalk/fourier.hpp"

#include <cmath>
#include <sstream>

namespace cyclewalk {

namespace {

const Complex kI{0.0, 1.0};

void check_indices(int k, int k_prime, int n_nodes, double p) {
    if (n_nodes < 2) {
        throw DomainError("n_nodes must be >= 2");
    }
    if (k < 0 || k >= n_nodes || k_prime < 0 || k_prime >= n_nodes) {
        std::ostringstream os;
        os << "momentum pair (" << k << ", " << k_prime << ") outside [0, " << n_nodes << ")";
        throw DomainError(os.str());
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("decoherence rate must lie in [0,1]");
    }
}

SuperOp tagged(int k, int k_prime, int n_nodes, double p) {
    SuperOp op;
    op.k = k;
    op.k_prime = k_prime;
    op.n_nodes = n_nodes;
    op.rate = p;
    const Complex sum_phase = unit_root(static_cast<long long>(k_prime) + k, n_nodes);
    const Complex diff_phase = unit_root(static_cast<long long>(k_prime) - k, n_nodes);
    op.c_plus = sum_phase.real();
    op.s_plus = sum_phase.imag();
    op.c_minus = diff_phase.real();
    op.s_minus = diff_phase.imag();
    return op;
}

}  // namespace

Mat2 apply_superop_to_matrix(int k, int k_prime, int n_nodes, double p, const Mat2& b) {
    check_indices(k, k_prime, n_nodes, p);
    const Mat2 left = hadamard_coin_momentum(k, n_nodes).entries;
    const Mat2 right = hadamard_coin_momentum(k_prime, n_nodes).entries.adjoint();
    return left * build_kraus_family(p).apply(b) * right;
}

SuperOp superop_definitional(int k, int k_prime, int n_nodes, double p) {
    check_indices(k, k_prime, n_nodes, p);
    SuperOp op = tagged(k, k_prime, n_nodes, p);
    const Mat2 left = hadamard_coin_momentum(k, n_nodes).entries;
    const Mat2 right = hadamard_coin_momentum(k_prime, n_nodes).entries.adjoint();
    const KrausFamily kraus = build_kraus_family(p);
    const auto& sigma = pauli_basis();
    for (int j = 0; j < 4; ++j) {
        const Mat2 image = left * kraus.apply(sigma[j]) * right;
        op.matrix.col(j) = pauli_decompose(image).coeffs();
    }
    return op;
}

SuperOp superop_definitional(int k, int k_prime, const WalkConfig& config) {
    return superop_definitional(k, k_prime, config.n_nodes, config.decoherence_rate);
}

SuperOp superop_closed_form(int k, int k_prime, int n_nodes, double p) {
    check_indices(k, k_prime, n_nodes, p);
    SuperOp op = tagged(k, k_prime, n_nodes, p);
    const double q = 1.0 - p;
    const double cp = op.c_plus, sp = op.s_plus, cm = op.c_minus, sm = op.s_minus;
    // clang-format off
    op.matrix <<
        cm,          q * kI * sm, 0.0,     0.0,
        0.0,         0.0,         q * sp,  cp,
        0.0,         0.0,        -q * cp,  sp,
        kI * sm,     q * cm,      0.0,     0.0;
    // clang-format on
    return op;
}

SuperOp superop_closed_form(int k, int k_prime, const WalkConfig& config) {
    return superop_closed_form(k, k_prime, config.n_nodes, config.decoherence_rate);
}

Complex trace_term(const SuperOp& superop, const PauliVector& initial, long long t) {
    if (t < 0) {
        throw DomainError("time step must be non-negative");
    }
    if (std::abs(initial[0] - 0.5) > 1e-10) {
        std::ostringstream os;
        os.precision(17);
        os << "initial operator is not a rank-1 projector: v_0 = " << initial[0];
        throw PreconditionError(os.str());
    }
    Vec4 v = initial.coeffs();
    for (long long step = 0; step < t; ++step) {
        v = superop.matrix * v;
    }
    return 2.0 * v(0);
}

}  // namespace cyclewalk

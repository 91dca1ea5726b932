#pragma once
// Momentum-space superoperators L_{k,k'} acting on 2x2 coin operators in the
// Pauli basis, and the trace term T_{kk'}(t) = Tr(L^t |psi0><psi0|).

#include "cyclewalk/core.hpp"

namespace cyclewalk {

struct SuperOp {
    Mat4 matrix;
    int k = 0;
    int k_prime = 0;
    int n_nodes = 0;
    double rate = 0.0;
    // cos / sin of 2 pi (k' + k) / N and 2 pi (k' - k) / N
    double c_plus = 1.0;
    double s_plus = 0.0;
    double c_minus = 1.0;
    double s_minus = 0.0;

    PauliVector apply(const PauliVector& v) const { return PauliVector(matrix * v.coeffs()); }
};

// Column j is pauli_decompose(sum_n C_k A_n sigma_j A_n^dagger C_{k'}^dagger).
SuperOp superop_definitional(int k, int k_prime, int n_nodes, double p);
SuperOp superop_definitional(int k, int k_prime, const WalkConfig& config);

// The literal closed-form 4x4 matrix in c+-, s+-, p.
SuperOp superop_closed_form(int k, int k_prime, int n_nodes, double p);
SuperOp superop_closed_form(int k, int k_prime, const WalkConfig& config);

// B -> sum_n C_k A_n B A_n^dagger C_{k'}^dagger evaluated on matrices directly.
Mat2 apply_superop_to_matrix(int k, int k_prime, int n_nodes, double p, const Mat2& b);

// Tr(L^t |psi0><psi0|) by t matrix-vector products and the 2 v_0 functional.
// `initial` must represent a rank-1 projector, i.e. have v_0 = 1/2.
Complex trace_term(const SuperOp& superop, const PauliVector& initial, long long t);

}  // namespace cyclewalk

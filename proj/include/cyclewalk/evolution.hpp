#pragma once
/*
 * Two independent evolutions of the decohered walk:
 *
 *   DirectWalk   rho(t+1) = sum_n U (I x A_n) rho(t) (I x A_n)^dagger U^dagger
 *                on the full 2N x 2N density matrix, U = S (I x H).
 *   FourierWalk  P(x,t) = (1/N^2) sum_{k,k'} e^{2 pi i x (k-k')/N} Tr(L_{kk'}^t |psi0><psi0|)
 *
 * plus the classical +-1 chain that the walk reduces to at p = 1.
 */

#include "cyclewalk/fourier.hpp"
#include "cyclewalk/spectral.hpp"

#include <vector>

namespace cyclewalk {

// Position-major: row/column 2x + c is node x, coin index c (c=0 is j=+1).
struct DensityOperator {
    Eigen::MatrixXcd matrix;
    int n_nodes = 0;

    // |0><0| x |psi0><psi0|
    static DensityOperator initial(const WalkConfig& config);

    Mat2 block(int x, int y) const { return matrix.block<2, 2>(2 * x, 2 * y); }

    struct Diagnostics {
        double hermiticity_defect = 0.0;
        double trace_defect = 0.0;
        double min_eigenvalue = 0.0;
    };
    Diagnostics diagnostics() const;
    // Hermitian to 1e-11, unit trace to 1e-11, eigenvalues >= -1e-9.
    bool satisfies_invariants() const;
};

enum class DistributionKind { instantaneous, time_averaged };

struct PositionDistribution {
    std::vector<double> probs;
    // Instantaneous: the step t. Time-averaged over t = 0..tau-1: time = tau.
    long long time = 0;
    DistributionKind kind = DistributionKind::instantaneous;

    int size() const { return static_cast<int>(probs.size()); }
    double operator[](int x) const { return probs[x]; }
    double total() const;
    // Entries >= -1e-12 and total within 1e-10 of one.
    bool is_normalized() const;
};

class DirectWalk {
public:
    explicit DirectWalk(const WalkConfig& config);

    void step();
    long long time() const noexcept { return time_; }
    const DensityOperator& state() const noexcept { return rho_; }
    PositionDistribution distribution() const;

private:
    WalkConfig config_;
    Mat2 coin_;
    KrausFamily kraus_;
    DensityOperator rho_;
    DensityOperator scratch_;
    long long time_ = 0;
};

class FourierWalk {
public:
    // `threads` > 1 splits the per-step pair updates over worker threads; the
    // reduction order is fixed so results do not depend on the thread count.
    explicit FourierWalk(const WalkConfig& config, Construction construction = Construction::definitional,
                         int threads = 1);

    void step();
    long long time() const noexcept { return time_; }

    // Throws NumericalError if the imaginary residue exceeds 1e-8.
    PositionDistribution distribution() const;
    // Largest |Im P(x,t)| seen by the last distribution() call.
    double last_imaginary_residue() const noexcept { return last_residue_; }

    // T_{kk'}(t) for the current t.
    Complex trace_term_at(int k, int k_prime) const;

private:
    WalkConfig config_;
    std::vector<Mat4> ops_;     // index k * N + k'
    std::vector<Vec4> states_;  // L^t |psi0><psi0| per pair
    int threads_ = 1;
    long long time_ = 0;
    mutable double last_residue_ = 0.0;
};

DensityOperator evolve_direct(const WalkConfig& config, long long t);

// probs[x] = trace of the coin block at node x.
PositionDistribution position_marginal(const DensityOperator& rho);

PositionDistribution distribution_fourier(const WalkConfig& config, long long t);

// t steps of the chain moving +-1 with probability 1/2 each, from node 0.
PositionDistribution classical_reference(int n_nodes, long long t);

// The distribution a walk launched from `node` would have: probs shifted by `node`.
PositionDistribution rotate_launch(const PositionDistribution& dist, int node);

}  // namespace cyclewalk

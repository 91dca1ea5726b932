#include "cyclewalk/evolution.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace cyclewalk {

namespace {

// Coin index c moves the walker by kStep[c].
constexpr int kStep[2] = {+1, -1};

int wrap(int x, int n) {
    const int r = x % n;
    return r < 0 ? r + n : r;
}

}  // namespace

DensityOperator DensityOperator::initial(const WalkConfig& config) {
    config.validate();
    DensityOperator rho;
    rho.n_nodes = config.n_nodes;
    rho.matrix = Eigen::MatrixXcd::Zero(2 * config.n_nodes, 2 * config.n_nodes);
    const int x0 = WalkConfig::kLaunchPosition;
    rho.matrix.block<2, 2>(2 * x0, 2 * x0) = config.initial_coin * config.initial_coin.adjoint();
    return rho;
}

DensityOperator::Diagnostics DensityOperator::diagnostics() const {
    Diagnostics d;
    d.hermiticity_defect = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    d.trace_defect = std::abs(matrix.trace() - Complex(1.0));
    const Eigen::MatrixXcd herm = 0.5 * (matrix + matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    return d;
}

bool DensityOperator::satisfies_invariants() const {
    const Diagnostics d = diagnostics();
    return d.hermiticity_defect <= 1e-11 && d.trace_defect <= 1e-11 && d.min_eigenvalue >= -1e-9;
}

double PositionDistribution::total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

bool PositionDistribution::is_normalized() const {
    for (double v : probs) {
        if (!(v >= -1e-12)) return false;
    }
    return std::abs(total() - 1.0) <= 1e-10;
}

DirectWalk::DirectWalk(const WalkConfig& config)
    : config_(config),
      coin_(hadamard_coin().entries),
      kraus_(build_kraus_family(config.decoherence_rate)),
      rho_(DensityOperator::initial(config)),
      scratch_(rho_) {}

void DirectWalk::step() {
    const int n = config_.n_nodes;
    scratch_.matrix.setZero();
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const Mat2 b = rho_.block(x, y);
            if (b.isZero(0.0)) continue;
            // Coin channel then coin unitary on the block, then the conditional shift.
            const Mat2 c = coin_ * kraus_.apply(b) * coin_.adjoint();
            for (int ci = 0; ci < 2; ++ci) {
                const int row = 2 * wrap(x + kStep[ci], n) + ci;
                for (int cj = 0; cj < 2; ++cj) {
                    const int col = 2 * wrap(y + kStep[cj], n) + cj;
                    scratch_.matrix(row, col) += c(ci, cj);
                }
            }
        }
    }
    std::swap(rho_.matrix, scratch_.matrix);
    ++time_;
}

PositionDistribution DirectWalk::distribution() const {
    PositionDistribution d = position_marginal(rho_);
    d.time = time_;
    return d;
}

FourierWalk::FourierWalk(const WalkConfig& config, Construction construction, int threads)
    : config_(config), threads_(std::max(1, threads)) {
    config_.validate();
    const int n = config_.n_nodes;
    const double p = config_.decoherence_rate;
    ops_.reserve(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        for (int kp = 0; kp < n; ++kp) {
            ops_.push_back(construction == Construction::definitional ? superop_definitional(k, kp, n, p).matrix
                                                                      : superop_closed_form(k, kp, n, p).matrix);
        }
    }
    states_.assign(ops_.size(), projector(config_.initial_coin).coeffs());
}

void FourierWalk::step() {
    const int n = config_.n_nodes;
    auto update_rows = [this, n](int k_begin, int k_end) {
        for (std::size_t i = static_cast<std::size_t>(k_begin) * n; i < static_cast<std::size_t>(k_end) * n; ++i) {
            states_[i] = ops_[i] * states_[i];
        }
    };
    const int workers = std::min(threads_, n);
    if (workers <= 1) {
        update_rows(0, n);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            const int begin = n * w / workers;
            const int end = n * (w + 1) / workers;
            pool.emplace_back(update_rows, begin, end);
        }
    }
    ++time_;
}

Complex FourierWalk::trace_term_at(int k, int k_prime) const {
    const int n = config_.n_nodes;
    if (k < 0 || k >= n || k_prime < 0 || k_prime >= n) {
        throw DomainError("momentum pair out of range");
    }
    return 2.0 * states_[static_cast<std::size_t>(k) * n + k_prime](0);
}

PositionDistribution FourierWalk::distribution() const {
    const int n = config_.n_nodes;
    // Group trace terms by d = k - k' (mod N); the phase only depends on d.
    std::vector<Complex> by_difference(n, Complex(0.0));
    for (int k = 0; k < n; ++k) {
        for (int kp = 0; kp < n; ++kp) {
            by_difference[wrap(k - kp, n)] += 2.0 * states_[static_cast<std::size_t>(k) * n + kp](0);
        }
    }
    PositionDistribution d;
    d.time = time_;
    d.probs.resize(n);
    double residue = 0.0;
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (int x = 0; x < n; ++x) {
        Complex acc = 0.0;
        for (int diff = 0; diff < n; ++diff) {
            acc += unit_root(static_cast<long long>(x) * diff, n) * by_difference[diff];
        }
        acc *= scale;
        residue = std::max(residue, std::abs(acc.imag()));
        d.probs[x] = acc.real();
    }
    last_residue_ = residue;
    if (residue > 1e-8) {
        std::ostringstream os;
        os.precision(17);
        os << "Fourier distribution has imaginary residue " << residue << " at t = " << time_;
        throw NumericalError(os.str());
    }
    return d;
}

DensityOperator evolve_direct(const WalkConfig& config, long long t) {
    if (t < 0) throw DomainError("time step must be non-negative");
    DirectWalk walk(config);
    for (long long s = 0; s < t; ++s) walk.step();
    return walk.state();
}

PositionDistribution position_marginal(const DensityOperator& rho) {
    PositionDistribution d;
    d.probs.resize(rho.n_nodes);
    for (int x = 0; x < rho.n_nodes; ++x) {
        d.probs[x] = (rho.matrix(2 * x, 2 * x) + rho.matrix(2 * x + 1, 2 * x + 1)).real();
    }
    return d;
}

PositionDistribution distribution_fourier(const WalkConfig& config, long long t) {
    if (t < 0) throw DomainError("time step must be non-negative");
    FourierWalk walk(config);
    for (long long s = 0; s < t; ++s) walk.step();
    return walk.distribution();
}

PositionDistribution classical_reference(int n_nodes, long long t) {
    if (n_nodes < 2) throw DomainError("n_nodes must be >= 2");
    if (t < 0) throw DomainError("time step must be non-negative");
    std::vector<double> cur(n_nodes, 0.0), next(n_nodes);
    cur[0] = 1.0;
    for (long long s = 0; s < t; ++s) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int x = 0; x < n_nodes; ++x) {
            next[wrap(x + 1, n_nodes)] += 0.5 * cur[x];
            next[wrap(x - 1, n_nodes)] += 0.5 * cur[x];
        }
        cur.swap(next);
    }
    PositionDistribution d;
    d.probs = std::move(cur);
    d.time = t;
    return d;
}

PositionDistribution rotate_launch(const PositionDistribution& dist, int node) {
    const int n = dist.size();
    PositionDistribution out = dist;
    for (int x = 0; x < n; ++x) out.probs[wrap(x + node, n)] = dist.probs[x];
    return out;
}

}  // namespace cyclewalk

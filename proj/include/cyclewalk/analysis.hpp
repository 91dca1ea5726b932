#pragma once
// Limiting distributions, total variation, time averages, mixing-time scans
// and the O(N/tau) bound on the time-averaged deviation from uniform.

#include "cyclewalk/evolution.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cyclewalk {

enum class Parity { even, odd };

Parity parity_of(long long t);

enum class LimitKind { uniform_all, parity_alternating, time_averaged_uniform };

struct LimitSpec {
    LimitKind kind = LimitKind::uniform_all;
    int n_nodes = 0;
    double value_on_support = 0.0;
    // Parity of the supporting nodes; set only for parity_alternating.
    std::optional<Parity> support_parity;

    PositionDistribution as_distribution() const;
};

PositionDistribution uniform_distribution(int n_nodes);

// Odd N: 1/N everywhere. Even N: 2/N on nodes whose parity equals t_parity,
// 0 elsewhere. Returns nullopt for p == 0, where no limit exists in general.
std::optional<LimitSpec> limiting_distribution(const WalkConfig& config, Parity t_parity);

// Limit of the Cesaro average, uniform for every N when p > 0.
LimitSpec time_averaged_limit(int n_nodes);

// Running Cesaro average (1/tau) sum_{t<tau} P(x,t) over a Fourier walk.
class TimeAverager {
public:
    explicit TimeAverager(const WalkConfig& config, int threads = 1);

    // Folds P(.,tau) into the sum and advances tau by one.
    void advance();
    long long tau() const noexcept { return tau_; }
    PositionDistribution average() const;
    // P(., tau - 1), the last instantaneous distribution folded in.
    const PositionDistribution& last_instantaneous() const noexcept { return last_; }

private:
    FourierWalk walk_;
    std::vector<double> sum_;
    PositionDistribution last_;
    long long tau_ = 0;
};

PositionDistribution time_averaged(const WalkConfig& config, long long tau);

// sum_x |p(x) - q(x)|, without the 1/2 factor.
double total_variation(const PositionDistribution& p, const PositionDistribution& q);

struct BoundEntry {
    long long tau = 0;
    double value = 0.0;
};

struct MixingReport {
    double epsilon = 0.0;
    std::optional<long long> mixing_time;
    // Sampled (t, TV) pairs; see MixingOptions::trace_every.
    std::vector<std::pair<long long, double>> tv_trace;
    long long horizon = 0;
    bool converged = false;
    std::optional<BoundEntry> bound;
};

struct MixingOptions {
    // 0: every t up to 100, then ~20 log-spaced points per decade.
    long long trace_every = 0;
    // Attach B(tau, N) at the reported tau; requires odd N, psi0 = |1>, p > 0.
    bool with_bound = false;
    int threads = 1;
};

// ceil(20 N^2 / eps), capped at 10^6.
long long default_horizon(int n_nodes, double epsilon);

// Smallest tau in [1, horizon) such that TV(Pbar(.,t), uniform) < eps for
// every t in (tau, horizon]; converged = false when TV(horizon) >= eps.
MixingReport mixing_time_averaged(const WalkConfig& config, double epsilon, long long horizon,
                                  const MixingOptions& options = {});

// Same scan on P(x,t). Odd N targets uniform; even N targets the parity-
// resolved limit (2/N on nodes matching t's parity).
MixingReport mixing_time_instantaneous(const WalkConfig& config, double epsilon, long long horizon,
                                       const MixingOptions& options = {});

struct Theorem5Bound {
    // (8 / (p^2 tau N^2)) sum_{j=1}^{N-1} j / (1 - cos(2 pi j / N))
    double value = 0.0;
    // (4 / (tau p^2 pi^2)) [-x cot x + ln sin x] from pi/N to (N-1)pi/N
    double riemann_estimate = 0.0;
};

// Requires odd N, p > 0, tau >= 1.
Theorem5Bound theorem5_bound(long long tau, int n_nodes, double p);

struct Theorem5Sample {
    long long tau = 0;
    double max_deviation = 0.0;  // max_x |Pbar(x,tau) - 1/N|
    double bound = 0.0;          // B(tau, N)
    double total_variation = 0.0;
};

// Measures Pbar against B at each requested tau (ascending). Only for the
// bound's hypotheses: odd N, p > 0, psi0 = |1> up to phase.
std::vector<Theorem5Sample> theorem5_check(const WalkConfig& config, const std::vector<long long>& taus);

// Max entrywise |sum_{t<tau} L^t - (I - L)^{-1}(I - L^tau)|. Requires k != k'.
double verify_geometric_sum(const SuperOp& superop, long long tau);

// Steps after which every generic block has decayed below tol / N^2:
// ceil(log(tol / N^2) / log(r)), r the largest generic spectral radius.
long long convergence_horizon(const WalkConfig& config, double tol);

}  // namespace cyclewalk

#include "cyclewalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cyclewalk {

Parity parity_of(long long t) { return (t % 2 == 0) ? Parity::even : Parity::odd; }

PositionDistribution uniform_distribution(int n_nodes) {
    if (n_nodes < 1) throw DomainError("n_nodes must be positive");
    PositionDistribution d;
    d.probs.assign(n_nodes, 1.0 / n_nodes);
    return d;
}

PositionDistribution LimitSpec::as_distribution() const {
    PositionDistribution d;
    d.probs.assign(n_nodes, 0.0);
    for (int x = 0; x < n_nodes; ++x) {
        if (!support_parity || parity_of(x) == *support_parity) d.probs[x] = value_on_support;
    }
    return d;
}

std::optional<LimitSpec> limiting_distribution(const WalkConfig& config, Parity t_parity) {
    config.validate();
    if (config.decoherence_rate == 0.0) return std::nullopt;
    LimitSpec spec;
    spec.n_nodes = config.n_nodes;
    if (config.n_nodes % 2 == 1) {
        spec.kind = LimitKind::uniform_all;
        spec.value_on_support = 1.0 / config.n_nodes;
    } else {
        spec.kind = LimitKind::parity_alternating;
        spec.value_on_support = 2.0 / config.n_nodes;
        spec.support_parity = t_parity;
    }
    return spec;
}

LimitSpec time_averaged_limit(int n_nodes) {
    LimitSpec spec;
    spec.kind = LimitKind::time_averaged_uniform;
    spec.n_nodes = n_nodes;
    spec.value_on_support = 1.0 / n_nodes;
    return spec;
}

TimeAverager::TimeAverager(const WalkConfig& config, int threads)
    : walk_(config, Construction::definitional, threads), sum_(config.n_nodes, 0.0) {}

void TimeAverager::advance() {
    last_ = walk_.distribution();
    for (std::size_t x = 0; x < sum_.size(); ++x) sum_[x] += last_.probs[x];
    walk_.step();
    ++tau_;
}

PositionDistribution TimeAverager::average() const {
    if (tau_ == 0) throw PreconditionError("time average over an empty window");
    PositionDistribution d;
    d.kind = DistributionKind::time_averaged;
    d.time = tau_;
    d.probs.resize(sum_.size());
    for (std::size_t x = 0; x < sum_.size(); ++x) d.probs[x] = sum_[x] / static_cast<double>(tau_);
    return d;
}

PositionDistribution time_averaged(const WalkConfig& config, long long tau) {
    if (tau < 1) throw DomainError("tau must be >= 1");
    TimeAverager avg(config);
    for (long long t = 0; t < tau; ++t) avg.advance();
    return avg.average();
}

double total_variation(const PositionDistribution& p, const PositionDistribution& q) {
    if (p.size() != q.size()) {
        throw DomainError("total_variation: length mismatch (" + std::to_string(p.size()) + " vs " +
                          std::to_string(q.size()) + ")");
    }
    double tv = 0.0;
    for (int x = 0; x < p.size(); ++x) tv += std::abs(p[x] - q[x]);
    return tv;
}

long long default_horizon(int n_nodes, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    const double h = std::ceil(20.0 * n_nodes * static_cast<double>(n_nodes) / epsilon);
    return static_cast<long long>(std::min(h, 1e6));
}

namespace {

bool is_up_coin(const Vec2& psi) {
    // |1> up to a global phase
    return std::abs(std::abs(psi(0)) - 1.0) <= 1e-12 && std::abs(psi(1)) <= 1e-12;
}

// Sampling rule for tv_trace.
class TraceSampler {
public:
    explicit TraceSampler(long long every) : every_(every) {}

    bool wanted(long long t) {
        if (every_ > 0) return t % every_ == 0 || t == 1;
        if (t <= 100) return true;
        if (t >= next_) {
            while (next_ <= t) {
                ++decile_;
                next_ = static_cast<long long>(std::ceil(100.0 * std::pow(10.0, decile_ / 20.0)));
            }
            return true;
        }
        return false;
    }

private:
    long long every_;
    int decile_ = 0;
    long long next_ = 100;
};

template <typename Distance>
MixingReport scan(double epsilon, long long horizon, const MixingOptions& options, Distance&& distance_at) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (horizon < 1) throw DomainError("horizon must be >= 1");
    MixingReport report;
    report.epsilon = epsilon;
    report.horizon = horizon;

    TraceSampler sampler(options.trace_every);
    long long last_violation = 0;
    double last_violation_tv = 0.0;
    double final_tv = 0.0;
    for (long long t = 1; t <= horizon; ++t) {
        const double tv = distance_at(t);
        if (!(tv < epsilon)) {
            last_violation = t;
            last_violation_tv = tv;
        }
        if (sampler.wanted(t) || t == horizon) report.tv_trace.emplace_back(t, tv);
        final_tv = tv;
    }
    report.converged = final_tv < epsilon;
    if (report.converged) {
        report.mixing_time = std::max<long long>(1, last_violation);
        if (last_violation >= 1) {
            auto it = std::lower_bound(report.tv_trace.begin(), report.tv_trace.end(),
                                       std::make_pair(last_violation, -1.0));
            if (it == report.tv_trace.end() || it->first != last_violation) {
                report.tv_trace.insert(it, {last_violation, last_violation_tv});
            }
        }
    }
    return report;
}

void attach_bound(MixingReport& report, const WalkConfig& config) {
    if (config.n_nodes % 2 == 0) {
        throw DomainError("the tau bound requires odd N, got N = " + std::to_string(config.n_nodes));
    }
    if (!(config.decoherence_rate > 0.0)) throw DomainError("the tau bound requires p > 0");
    if (!is_up_coin(config.initial_coin)) throw DomainError("the tau bound requires initial coin |1>");
    const long long tau = report.mixing_time.value_or(report.horizon);
    report.bound = BoundEntry{tau, theorem5_bound(tau, config.n_nodes, config.decoherence_rate).value};
}

}  // namespace

MixingReport mixing_time_averaged(const WalkConfig& config, double epsilon, long long horizon,
                                  const MixingOptions& options) {
    config.validate();
    if (options.with_bound) {
        // Reject unsupported configurations before the scan runs.
        MixingReport probe;
        probe.horizon = 1;
        attach_bound(probe, config);
    }
    TimeAverager avg(config, options.threads);
    const PositionDistribution uniform = uniform_distribution(config.n_nodes);
    MixingReport report = scan(epsilon, horizon, options, [&](long long) {
        avg.advance();
        return total_variation(avg.average(), uniform);
    });
    if (options.with_bound) attach_bound(report, config);
    return report;
}

MixingReport mixing_time_instantaneous(const WalkConfig& config, double epsilon, long long horizon,
                                       const MixingOptions& options) {
    config.validate();
    if (options.with_bound) {
        throw DomainError("the tau bound applies to the time-averaged distribution only");
    }
    FourierWalk walk(config, Construction::definitional, options.threads);
    const int n = config.n_nodes;
    const double p = config.decoherence_rate;
    auto target_for = [&](long long t) {
        if (n % 2 == 1) return uniform_distribution(n);
        // p = 0 has no limit; the parity-resolved target is still the natural reference.
        WalkConfig decohered = config;
        if (p == 0.0) decohered.decoherence_rate = 1.0;
        return limiting_distribution(decohered, parity_of(t))->as_distribution();
    };
    return scan(epsilon, horizon, options, [&](long long t) {
        walk.step();
        return total_variation(walk.distribution(), target_for(t));
    });
}

Theorem5Bound theorem5_bound(long long tau, int n_nodes, double p) {
    if (n_nodes < 3 || n_nodes % 2 == 0) {
        throw DomainError("theorem5_bound requires odd N >= 3, got " + std::to_string(n_nodes));
    }
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("theorem5_bound requires 0 < p <= 1");
    if (tau < 1) throw DomainError("tau must be >= 1");
    const double n = n_nodes;
    double sum = 0.0;
    for (int j = 1; j < n_nodes; ++j) {
        sum += j / (1.0 - unit_root(j, n_nodes).real());
    }
    Theorem5Bound b;
    b.value = 8.0 / (p * p * static_cast<double>(tau) * n * n) * sum;
    auto antiderivative = [](double x) { return -x / std::tan(x) + std::log(std::sin(x)); };
    b.riemann_estimate = 4.0 / (static_cast<double>(tau) * p * p * kPi * kPi) *
                         (antiderivative((n - 1.0) * kPi / n) - antiderivative(kPi / n));
    return b;
}

std::vector<Theorem5Sample> theorem5_check(const WalkConfig& config, const std::vector<long long>& taus) {
    config.validate();
    if (config.n_nodes % 2 == 0) throw DomainError("theorem5_check requires odd N");
    if (!(config.decoherence_rate > 0.0)) throw DomainError("theorem5_check requires p > 0");
    if (!is_up_coin(config.initial_coin)) throw DomainError("theorem5_check requires initial coin |1>");
    if (!std::is_sorted(taus.begin(), taus.end())) throw DomainError("taus must be ascending");

    TimeAverager avg(config);
    const PositionDistribution uniform = uniform_distribution(config.n_nodes);
    std::vector<Theorem5Sample> out;
    for (long long tau : taus) {
        if (tau < 1) throw DomainError("tau must be >= 1");
        while (avg.tau() < tau) avg.advance();
        const PositionDistribution bar = avg.average();
        Theorem5Sample s;
        s.tau = tau;
        for (int x = 0; x < config.n_nodes; ++x) {
            s.max_deviation = std::max(s.max_deviation, std::abs(bar[x] - uniform[x]));
        }
        s.bound = theorem5_bound(tau, config.n_nodes, config.decoherence_rate).value;
        s.total_variation = total_variation(bar, uniform);
        out.push_back(s);
    }
    return out;
}

double verify_geometric_sum(const SuperOp& superop, long long tau) {
    if (superop.k == superop.k_prime) {
        throw PreconditionError("geometric-sum identity needs k != k' (I - L is singular on the diagonal)");
    }
    if (tau < 1) throw DomainError("tau must be >= 1");
    const Mat4& a = superop.matrix;
    const Mat4 id = Mat4::Identity();
    Mat4 sum = Mat4::Zero();
    Mat4 power = id;
    for (long long t = 0; t < tau; ++t) {
        sum += power;
        power = power * a;
    }
    const Mat4 resolvent = (id - a).partialPivLu().solve(id - power);
    return (sum - resolvent).cwiseAbs().maxCoeff();
}

long long convergence_horizon(const WalkConfig& config, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw DomainError("tol must lie in (0,1)");
    const GapReport gap = spectral_gap(config);
    if (gap.degenerate || gap.max_radius >= 1.0) {
        throw DomainError("no convergence horizon: spectral gap is zero");
    }
    if (gap.max_radius <= 0.0) return 1;
    const double n2 = static_cast<double>(config.n_nodes) * config.n_nodes;
    return static_cast<long long>(std::ceil(std::log(tol / n2) / std::log(gap.max_radius)));
}

}  // namespace cyclewalk

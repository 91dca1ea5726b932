#include "cyclewalk/verify.hpp"

#include "cyclewalk/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace cyclewalk {

namespace {

struct Sizes {
    int max_nodes;
    long long max_steps;
    int prop2_max_nodes;
    int theorem3_max_odd;
    int theorem3_max_even;
    int theorem5_max_nodes;
    std::vector<long long> theorem5_taus;
    std::vector<int> corollary4_nodes;
};

Sizes sizes_for(bool quick) {
    if (quick) return {7, 50, 7, 7, 6, 7, {100, 1000}, {4, 5}};
    return {12, 200, 16, 11, 8, 17, {100, 1000, 10000}, {4, 5, 8, 9}};
}

// Portable uniform doubles from a fixed-seed engine (std distributions are
// implementation-defined).
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
    Complex gaussian_ish() { return {2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0}; }
    Mat2 matrix() {
        Mat2 m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = gaussian_ish();
        return m;
    }

private:
    std::mt19937_64 engine_;
};

struct Tuple {
    int n, k, kp;
    double p;
};

std::vector<Tuple> random_tuples(std::uint64_t seed, int count, int max_nodes, bool off_diagonal) {
    Sampler s(seed);
    std::vector<Tuple> out;
    while (static_cast<int>(out.size()) < count) {
        Tuple t;
        t.n = 2 + s.below(max_nodes - 1);
        t.k = s.below(t.n);
        t.kp = s.below(t.n);
        t.p = s.uniform();
        if (off_diagonal && t.k == t.kp) continue;
        out.push_back(t);
    }
    return out;
}

std::string fmt(double v) { return format_double(v); }

CheckResult make(std::string name, double measured, double tol, long long cases, bool passed, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.measured = measured;
    r.tolerance = tol;
    r.cases = cases;
    r.passed = passed;
    r.detail = std::move(detail);
    return r;
}

CheckResult check_unitality(const Sizes&) {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const KrausFamily f = build_kraus_family(i / 100.0);
        worst = std::max(worst, (f.completeness() - Mat2::Identity()).cwiseAbs().maxCoeff());
    }
    return make("unitality", worst, 1e-14, 101, worst <= 1e-14);
}

CheckResult check_lemma1(const Sizes&) {
    Sampler s(0x1e771);
    double worst_excess = 0.0;
    double worst_identity = 0.0;
    long long cases = 0;
    bool equality_only_at_zero = true;
    for (const Tuple& t : random_tuples(11, 50, 32, false)) {
        for (const double p : {t.p, 0.0}) {
            bool all_equal = true;
            for (int i = 0; i < 20; ++i) {
                const Mat2 b = s.matrix();
                const Mat2 sb = apply_superop_to_matrix(t.k, t.kp, t.n, p, b);
                const double lhs = hs_inner(sb, sb).real();
                const double rhs = hs_inner(b, b).real();
                worst_excess = std::max(worst_excess, lhs - rhs);
                const double q = 1.0 - p;
                const double identity = q * q * rhs + (2.0 * p - p * p) * (std::norm(b(0, 0)) + std::norm(b(1, 1)));
                worst_identity = std::max(worst_identity, std::abs(lhs - identity));
                all_equal = all_equal && std::abs(lhs - rhs) <= 1e-12;
                ++cases;
            }
            if (all_equal != (p == 0.0)) equality_only_at_zero = false;
        }
    }
    const double measured = std::max(worst_excess, worst_identity);
    std::ostringstream detail;
    detail << "max(<SB,SB> - <B,B>) = " << fmt(worst_excess) << "; max identity residual = " << fmt(worst_identity)
           << "; equality exactly at p = 0: " << (equality_only_at_zero ? "yes" : "no");
    return make("lemma1", measured, 1e-12, cases, measured <= 1e-12 && equality_only_at_zero, detail.str());
}

CheckResult check_eq10(const Sizes&) {
    double worst = 0.0;
    Tuple worst_tuple{};
    const auto tuples = random_tuples(10, 200, 32, false);
    for (const Tuple& t : tuples) {
        const double d = (superop_definitional(t.k, t.kp, t.n, t.p).matrix - superop_closed_form(t.k, t.kp, t.n, t.p).matrix)
                             .cwiseAbs()
                             .maxCoeff();
        if (d > worst) {
            worst = d;
            worst_tuple = t;
        }
    }
    std::ostringstream detail;
    detail << "worst at N=" << worst_tuple.n << " k=" << worst_tuple.k << " k'=" << worst_tuple.kp
           << " p=" << fmt(worst_tuple.p);
    return make("eq10", worst, 1e-12, static_cast<long long>(tuples.size()), worst <= 1e-12, detail.str());
}

// Coefficients of det(l I - M) recovered from its values at the fifth roots of unity.
std::array<Complex, 5> interpolate_det(const Mat4& m) {
    std::array<Complex, 5> values;
    for (int j = 0; j < 5; ++j) {
        const Complex l = std::polar(1.0, 2.0 * kPi * j / 5.0);
        values[j] = (l * Mat4::Identity() - m).determinant();
    }
    std::array<Complex, 5> by_degree;
    for (int d = 0; d < 5; ++d) {
        Complex acc = 0.0;
        for (int j = 0; j < 5; ++j) acc += values[j] * std::polar(1.0, -2.0 * kPi * j * d / 5.0);
        by_degree[d] = acc / 5.0;
    }
    return by_degree;
}

CheckResult check_charpoly(const Sizes&) {
    double worst = 0.0;
    const auto tuples = random_tuples(10, 200, 32, false);
    for (const Tuple& t : tuples) {
        const SuperOp op = superop_definitional(t.k, t.kp, t.n, t.p);
        const Quartic f = char_poly(op);
        const auto numeric = interpolate_det(op.matrix);
        for (int d = 0; d < 5; ++d) {
            worst = std::max(worst, std::abs(numeric[d] - f.coeffs[4 - d]));
        }
    }
    return make("charpoly", worst, 1e-10, static_cast<long long>(tuples.size()), worst <= 1e-10);
}

CheckResult check_prop2(const Sizes& sz) {
    long long cases = 0;
    long long violations = 0;
    double worst_radius = 0.0;
    std::ostringstream detail;
    for (int n = 3; n <= sz.prop2_max_nodes; ++n) {
        for (const double p : {0.1, 0.3, 0.5, 0.9}) {
            for (int k = 0; k < n; ++k) {
                for (int kp = 0; kp < n; ++kp) {
                    ++cases;
                    const SpectrumReport r = eigenvalues(superop_definitional(k, kp, n, p));
                    worst_radius = std::max(worst_radius, r.spectral_radius);
                    bool ok = r.spectral_radius <= 1.0 + 1e-10;
                    for (const Complex l : r.unit_modulus) {
                        ok = ok && std::min(std::abs(l - 1.0), std::abs(l + 1.0)) <= 1e-8;
                    }
                    const PairClass c = classify_pair(k, kp, n);
                    ok = ok && r.has_unit_eigenvalue == (c == PairClass::diagonal_pair);
                    ok = ok && r.has_minus_one == (c == PairClass::antipodal_pair);
                    if (r.has_minus_one) ok = ok && std::abs(r.minus_one_derivative) > 1e-10;
                    if (!ok) {
                        if (violations < 5) detail << "violation N=" << n << " k=" << k << " k'=" << kp << " p=" << p << "; ";
                        ++violations;
                    }
                }
            }
        }
    }
    detail << "max spectral radius = " << fmt(worst_radius);
    return make("prop2", static_cast<double>(violations), 0.0, cases, violations == 0, detail.str());
}

CheckResult check_roots(const Sizes& sz) {
    double worst = 0.0;
    long long cases = 0;
    for (int n = 3; n <= sz.prop2_max_nodes; ++n) {
        for (const double p : {0.1, 0.3, 0.5, 0.9}) {
            for (int k = 0; k < n; ++k) {
                for (int kp = 0; kp < n; ++kp) {
                    const SuperOp op = superop_definitional(k, kp, n, p);
                    worst = std::max(worst, multiset_distance(eigenvalues(op).eigenvalues, quartic_roots(char_poly(op)), 1e-6));
                    ++cases;
                }
            }
        }
    }
    return make("roots", worst, 1e-8, cases, worst <= 1e-8);
}

CheckResult check_oracle(const Sizes& sz) {
    double worst = 0.0;
    double worst_herm = 0.0, worst_trace = 0.0, min_eig = 0.0;
    long long cases = 0;
    for (int n = 3; n <= sz.max_nodes; ++n) {
        for (const double p : {0.0, 0.1, 0.5, 1.0}) {
            for (const Vec2& coin : {coin_up(), coin_balanced()}) {
                const WalkConfig cfg = WalkConfig::make(n, p, coin);
                DirectWalk direct(cfg);
                FourierWalk fourier(cfg);
                for (long long t = 0; t <= sz.max_steps; ++t) {
                    const PositionDistribution a = direct.distribution();
                    const PositionDistribution b = fourier.distribution();
                    for (int x = 0; x < n; ++x) worst = std::max(worst, std::abs(a[x] - b[x]));
                    const auto diag = direct.state().diagnostics();
                    worst_herm = std::max(worst_herm, diag.hermiticity_defect);
                    worst_trace = std::max(worst_trace, diag.trace_defect);
                    min_eig = std::min(min_eig, diag.min_eigenvalue);
                    ++cases;
                    direct.step();
                    fourier.step();
                }
            }
        }
    }
    const bool invariants = worst_herm <= 1e-11 && worst_trace <= 1e-11 && min_eig >= -1e-9;
    std::ostringstream detail;
    detail << "density invariants: hermiticity " << fmt(worst_herm) << ", trace " << fmt(worst_trace)
           << ", min eigenvalue " << fmt(min_eig);
    return make("oracle", worst, 1e-10, cases, worst <= 1e-10 && invariants, detail.str());
}

CheckResult check_classical(const Sizes& sz) {
    double worst = 0.0;
    long long cases = 0;
    for (int n = 2; n <= sz.max_nodes; ++n) {
        DirectWalk walk(WalkConfig::make(n, 1.0, coin_balanced()));
        for (long long t = 0; t <= sz.max_steps; ++t) {
            const PositionDistribution a = walk.distribution();
            const PositionDistribution b = classical_reference(n, t);
            for (int x = 0; x < n; ++x) worst = std::max(worst, std::abs(a[x] - b[x]));
            ++cases;
            walk.step();
        }
    }
    return make("classical", worst, 1e-12, cases, worst <= 1e-12);
}

// Max deviation from the limit at t and t + 1, on both evolution paths.
double theorem3_deviation(const WalkConfig& cfg, long long t_star) {
    DirectWalk direct(cfg);
    FourierWalk fourier(cfg);
    for (long long t = 0; t < t_star; ++t) {
        direct.step();
        fourier.step();
    }
    double worst = 0.0;
    for (long long t = t_star; t <= t_star + 1; ++t) {
        const PositionDistribution target = limiting_distribution(cfg, parity_of(t))->as_distribution();
        for (const PositionDistribution& d : {direct.distribution(), fourier.distribution()}) {
            for (int x = 0; x < cfg.n_nodes; ++x) worst = std::max(worst, std::abs(d[x] - target[x]));
        }
        direct.step();
        fourier.step();
    }
    return worst;
}

CheckResult check_theorem3(const Sizes& sz) {
    double worst = 0.0;
    long long cases = 0;
    long long longest = 0;
    std::vector<int> nodes;
    for (int n = 3; n <= sz.theorem3_max_odd; n += 2) nodes.push_back(n);
    for (int n = 4; n <= sz.theorem3_max_even; n += 2) nodes.push_back(n);
    for (const int n : nodes) {
        for (const double p : {0.1, 0.5, 0.9}) {
            for (const Vec2& coin : {coin_up(), coin_balanced()}) {
                const WalkConfig cfg = WalkConfig::make(n, p, coin);
                const long long t_star = convergence_horizon(cfg, 1e-6);
                longest = std::max(longest, t_star);
                worst = std::max(worst, theorem3_deviation(cfg, t_star));
                ++cases;
            }
        }
    }
    std::ostringstream detail;
    detail << "largest T* = " << longest;
    return make("theorem3", worst, 1e-6, cases, worst < 1e-6, detail.str());
}

CheckResult check_geomsum(const Sizes&) {
    double worst = 0.0;
    const auto tuples = random_tuples(8, 50, 32, true);
    for (const Tuple& t : tuples) {
        const SuperOp op = superop_definitional(t.k, t.kp, t.n, t.p);
        for (const long long tau : {1LL, 10LL, 1000LL}) worst = std::max(worst, verify_geometric_sum(op, tau));
    }
    return make("geomsum", worst, 1e-10, static_cast<long long>(tuples.size()) * 3, worst < 1e-10);
}

CheckResult check_theorem5(const Sizes& sz) {
    double worst_excess = -1.0;
    double worst_ratio_dev = 0.0;
    bool ratio_ok = true;
    long long cases = 0;
    std::ostringstream detail;
    for (int n = 3; n <= sz.theorem5_max_nodes; n += 2) {
        for (const double p : {0.2, 0.5}) {
            const auto samples = theorem5_check(WalkConfig::make(n, p, coin_up()), sz.theorem5_taus);
            for (const auto& s : samples) {
                worst_excess = std::max(worst_excess, s.max_deviation - s.bound);
                ++cases;
            }
            const auto& a = samples[samples.size() - 2];
            const auto& b = samples.back();
            const double ratio = (a.total_variation * a.tau) / (b.total_variation * b.tau);
            worst_ratio_dev = std::max(worst_ratio_dev, std::abs(std::log(ratio)));
            if (!(ratio >= 0.5 && ratio <= 2.0)) {
                ratio_ok = false;
                detail << "TV*tau ratio " << fmt(ratio) << " at N=" << n << " p=" << p << "; ";
            }
        }
    }
    detail << "max(deviation - bound) = " << fmt(worst_excess) << "; max |log TV*tau ratio| = " << fmt(worst_ratio_dev);
    return make("theorem5", worst_excess, 1e-9, cases, worst_excess <= 1e-9 && ratio_ok, detail.str());
}

CheckResult check_corollary4(const Sizes& sz) {
    constexpr double kEps = 1e-2;
    long long cases = 0;
    long long slowest = 0;
    bool ok = true;
    double worst_tv = 0.0;
    std::ostringstream detail;
    for (const int n : sz.corollary4_nodes) {
        for (const double p : {0.2, 0.6}) {
            const WalkConfig cfg = WalkConfig::make(n, p, coin_up());
            const long long horizon = default_horizon(n, kEps);
            TimeAverager avg(cfg);
            const PositionDistribution uniform = uniform_distribution(n);
            double tv = 1.0;
            while (avg.tau() < horizon && tv >= kEps) {
                avg.advance();
                tv = total_variation(avg.average(), uniform);
            }
            ++cases;
            slowest = std::max(slowest, avg.tau());
            worst_tv = std::max(worst_tv, tv);
            if (tv >= kEps) {
                ok = false;
                detail << "no crossing for N=" << n << " p=" << p << "; ";
            }
        }
    }
    detail << "slowest first crossing at tau = " << slowest;
    return make("corollary4", worst_tv, kEps, cases, ok, detail.str());
}

using CheckFn = CheckResult (*)(const Sizes&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> checks = {
        {"unitality", check_unitality}, {"lemma1", check_lemma1},     {"eq10", check_eq10},
        {"charpoly", check_charpoly},   {"prop2", check_prop2},       {"roots", check_roots},
        {"oracle", check_oracle},       {"classical", check_classical}, {"theorem3", check_theorem3},
        {"geomsum", check_geomsum},     {"theorem5", check_theorem5}, {"corollary4", check_corollary4},
    };
    return checks;
}

}  // namespace

const std::vector<std::string>& available_checks() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    std::vector<CheckFn> selected;
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) {
        if (options.checks.empty() || std::find(options.checks.begin(), options.checks.end(), name) != options.checks.end()) {
            selected.push_back(fn);
            names.push_back(name);
        }
    }
    for (const auto& wanted : options.checks) {
        if (std::find(names.begin(), names.end(), wanted) == names.end()) {
            throw DomainError("unknown check '" + wanted + "'");
        }
    }
    const Sizes sz = sizes_for(options.quick);
    std::vector<CheckResult> results(selected.size());
    auto run_one = [&](std::size_t i) {
        try {
            results[i] = selected[i](sz);
        } catch (const std::exception& e) {
            results[i] = make(names[i], 0.0, 0.0, 0, false, std::string("exception: ") + e.what());
        }
    };
    const int workers = std::clamp(options.threads, 1, static_cast<int>(std::max<std::size_t>(1, selected.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < selected.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < selected.size(); i = next++) run_one(i);
            });
        }
    }
    return results;
}

Json verification_report(const std::vector<CheckResult>& results, const VerifyOptions& options) {
    const Sizes sz = sizes_for(options.quick);
    Json doc;
    doc["suite"] = "cyclewalk verify";
    doc["quick"] = options.quick;
    doc["max_nodes"] = sz.max_nodes;
    doc["max_steps"] = sz.max_steps;
    bool all = true;
    Json checks = Json::array();
    Json failures = Json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        Json c;
        c["name"] = r.name;
        c["passed"] = r.passed;
        c["measured"] = r.measured;
        c["tolerance"] = r.tolerance;
        c["cases"] = r.cases;
        c["detail"] = r.detail;
        checks.push_back(std::move(c));
        if (!r.passed) failures.push_back(r.name);
    }
    doc["passed"] = all;
    doc["checks"] = std::move(checks);
    doc["failures"] = std::move(failures);
    return doc;
}

}  // namespace cyclewalk

#include "cyclewalk/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cyclewalk {

Complex Quartic::operator()(Complex x) const {
    Complex acc = coeffs[0];
    for (int i = 1; i < 5; ++i) acc = acc * x + coeffs[i];
    return acc;
}

Complex Quartic::derivative(Complex x) const {
    Complex acc = 4.0 * coeffs[0];
    for (int i = 1; i < 4; ++i) acc = acc * x + static_cast<double>(4 - i) * coeffs[i];
    return acc;
}

std::string_view to_string(PairClass c) {
    switch (c) {
        case PairClass::diagonal_pair: return "diagonal-pair";
        case PairClass::antipodal_pair: return "antipodal-pair";
        case PairClass::generic: return "generic";
    }
    return "generic";
}

PairClass classify_pair(int k, int k_prime, int n_nodes) {
    if (k == k_prime) return PairClass::diagonal_pair;
    if (n_nodes % 2 == 0 && std::abs(k - k_prime) == n_nodes / 2) return PairClass::antipodal_pair;
    return PairClass::generic;
}

Quartic char_poly(const SuperOp& superop) {
    const double q = 1.0 - superop.rate;
    const double cp = superop.c_plus, cm = superop.c_minus;
    Quartic f;
    f.coeffs = {1.0, q * cp - cm, -2.0 * q * cp * cm, q * (cp - q * cm), q * q};
    return f;
}

std::array<Complex, 4> quartic_roots(const Quartic& f) {
    // Cauchy bound on root moduli seeds the initial circle.
    double bound = 0.0;
    for (int i = 1; i < 5; ++i) bound = std::max(bound, std::abs(f.coeffs[i]));
    const double radius = 1.0 + bound;

    std::array<Complex, 4> z;
    for (int i = 0; i < 4; ++i) {
        // Off-axis start avoids symmetric stalls on real polynomials.
        const double angle = 2.0 * kPi * i / 4.0 + 0.4;
        z[i] = std::polar(0.5 * radius, angle);
    }

    constexpr int kMaxIter = 500;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double largest_step = 0.0;
        for (int i = 0; i < 4; ++i) {
            const Complex value = f(z[i]);
            if (value == Complex(0.0)) continue;
            const Complex newton = value / f.derivative(z[i]);
            Complex repulsion = 0.0;
            for (int j = 0; j < 4; ++j) {
                if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
            }
            const Complex step = newton / (1.0 - newton * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[i] -= step;
            largest_step = std::max(largest_step, std::abs(step));
        }
        if (largest_step < 1e-16 * radius) break;
    }

    // A close pair is a (near-)double root: it is a simple root of f', which
    // Newton resolves to full precision from the pair centroid.
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (std::abs(z[i] - z[j]) >= 1e-6) continue;
            Complex r = 0.5 * (z[i] + z[j]);
            for (int it = 0; it < 8; ++it) {
                const Complex d2 = 2.0 * (6.0 * f.coeffs[0] * r * r + 3.0 * f.coeffs[1] * r + f.coeffs[2]);
                if (std::abs(d2) < 1e-12) break;
                r -= f.derivative(r) / d2;
            }
            if (std::abs(f(r)) <= std::max(std::abs(f(z[i])), std::abs(f(z[j]))) + 1e-14) z[i] = z[j] = r;
        }
    }

    // Newton polish for simple roots; skipped where f' vanishes.
    for (auto& root : z) {
        for (int i = 0; i < 3; ++i) {
            const Complex d = f.derivative(root);
            if (std::abs(d) < 1e-8) break;
            const Complex next = root - f(root) / d;
            if (std::abs(f(next)) >= std::abs(f(root))) break;
            root = next;
        }
    }
    return z;
}

SpectrumReport eigenvalues(const SuperOp& superop) {
    Eigen::ComplexEigenSolver<Mat4> solver(superop.matrix, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigensolver did not converge", superop.matrix);
    }
    const Quartic f = char_poly(superop);

    SpectrumReport report;
    report.classification = classify_pair(superop.k, superop.k_prime, superop.n_nodes);
    for (int i = 0; i < 4; ++i) {
        const Complex lambda = solver.eigenvalues()(i);
        report.eigenvalues[i] = lambda;
        if (std::abs(f(lambda)) >= 1e-8) {
            std::ostringstream os;
            os.precision(17);
            os << "eigenvalue " << lambda << " is not a root of the characteristic polynomial (|f| = "
               << std::abs(f(lambda)) << ")";
            throw NumericalError(os.str(), superop.matrix);
        }
        const double modulus = std::abs(lambda);
        report.spectral_radius = std::max(report.spectral_radius, modulus);
        if (std::abs(modulus - 1.0) < kUnitModulusTol) report.unit_modulus.push_back(lambda);
        if (std::abs(lambda - 1.0) < kUnitModulusTol) report.has_unit_eigenvalue = true;
        if (std::abs(lambda + 1.0) < kUnitModulusTol) report.has_minus_one = true;
    }
    report.minus_one_derivative = f.derivative(-1.0).real();
    return report;
}

double multiset_distance(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b, double cluster_tol) {
    std::array<bool, 4> used_a{}, used_b{};
    std::array<int, 4> partner{};
    for (int round = 0; round < 4; ++round) {
        double best = std::numeric_limits<double>::infinity();
        int bi = 0, bj = 0;
        for (int i = 0; i < 4; ++i) {
            if (used_a[i]) continue;
            for (int j = 0; j < 4; ++j) {
                if (used_b[j]) continue;
                const double d = std::abs(a[i] - b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = used_b[bj] = true;
        partner[bi] = bj;
    }

    // Connected components of `a` under the cluster threshold.
    std::array<int, 4> group{0, 1, 2, 3};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (std::abs(a[i] - a[j]) < cluster_tol) {
                const int from = group[j], to = group[i];
                for (auto& g : group) {
                    if (g == from) g = to;
                }
            }
        }
    }
    double worst = 0.0;
    for (int g = 0; g < 4; ++g) {
        Complex sum_a = 0.0, sum_b = 0.0;
        int count = 0;
        for (int i = 0; i < 4; ++i) {
            if (group[i] != g) continue;
            sum_a += a[i];
            sum_b += b[partner[i]];
            ++count;
        }
        if (count > 0) worst = std::max(worst, std::abs(sum_a - sum_b) / static_cast<double>(count));
    }
    return worst;
}

GapReport spectral_gap(const WalkConfig& config, Construction construction) {
    config.validate();
    const int n = config.n_nodes;
    const double p = config.decoherence_rate;
    GapReport report;
    if (p == 0.0) {
        report.degenerate = true;
        report.max_radius = 1.0;
        report.gap = 0.0;
        return report;
    }
    for (int k = 0; k < n; ++k) {
        for (int kp = 0; kp < n; ++kp) {
            if (classify_pair(k, kp, n) != PairClass::generic) continue;
            const SuperOp op = construction == Construction::definitional ? superop_definitional(k, kp, n, p)
                                                                          : superop_closed_form(k, kp, n, p);
            const double r = eigenvalues(op).spectral_radius;
            if (report.worst_k < 0 || r > report.max_radius) {
                report.max_radius = r;
                report.worst_k = k;
                report.worst_k_prime = kp;
            }
        }
    }
    report.gap = 1.0 - report.max_radius;
    return report;
}

}  // namespace cyclewalk

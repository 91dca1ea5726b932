#pragma once
/*
 * Spectral structure of L_{k,k'}:
 *
 *   f(l) = l^4 + ((1-p)c+ - c-) l^3 + 2(p-1) c+ c- l^2
 *              + (1-p)(c+ - (1-p)c-) l + (1-p)^2
 *
 * Eigenvalues come from two independent routes: a dense eigensolver on the
 * 4x4 matrix, and polynomial root finding on f. For 0 < p < 1 every
 * eigenvalue lies in the closed unit disk, and the only unit-modulus ones
 * are +1 (iff k = k') and -1 (iff |k - k'| = N/2, always simple).
 */

#include "cyclewalk/fourier.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace cyclewalk {

inline constexpr double kUnitModulusTol = 1e-9;

struct Quartic {
    // a4, a3, a2, a1, a0 with a4 == 1
    std::array<double, 5> coeffs{1.0, 0.0, 0.0, 0.0, 0.0};

    Complex operator()(Complex x) const;
    Complex derivative(Complex x) const;
};

enum class PairClass { diagonal_pair, antipodal_pair, generic };

std::string_view to_string(PairClass c);

// k == k' -> diagonal; even N with |k - k'| == N/2 -> antipodal; otherwise generic.
PairClass classify_pair(int k, int k_prime, int n_nodes);

struct SpectrumReport {
    std::array<Complex, 4> eigenvalues;
    double spectral_radius = 0.0;
    bool has_unit_eigenvalue = false;
    bool has_minus_one = false;
    PairClass classification = PairClass::generic;
    // f'(-1); meaningful when has_minus_one.
    double minus_one_derivative = 0.0;
    // Eigenvalues with ||l| - 1| < kUnitModulusTol.
    std::vector<Complex> unit_modulus;
};

// Coefficients from c+-, p of the given superoperator.
Quartic char_poly(const SuperOp& superop);

// Roots of a monic quartic by Aberth-Ehrlich iteration with Newton polishing.
std::array<Complex, 4> quartic_roots(const Quartic& f);

// Dense eigensolver on the 4x4 matrix; throws NumericalError (with the matrix
// as payload) on non-convergence or if any eigenvalue misses f by 1e-8.
SpectrumReport eigenvalues(const SuperOp& superop);

// Greedy minimum-distance matching of two 4-element multisets; returns the
// largest matched distance. Elements of `a` closer than `cluster_tol` to each
// other form a cluster that is compared by centroid: a defective multiple
// eigenvalue is only determined to ~sqrt(eps) individually, but its centroid
// is determined to ~eps.
double multiset_distance(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b,
                         double cluster_tol = 0.0);

enum class Construction { definitional, closed_form };

struct GapReport {
    double gap = 0.0;
    double max_radius = 0.0;
    // p == 0: unit-modulus eigenvalues persist on every block.
    bool degenerate = false;
    // Pair attaining max_radius (-1 when there are no generic pairs).
    int worst_k = -1;
    int worst_k_prime = -1;
};

// 1 - max spectral radius over generic (non-persistent) pairs.
GapReport spectral_gap(const WalkConfig& config, Construction construction = Construction::definitional);

}  // namespace cyclewalk

#pragma once

// Slow, independent reference computations used by the tests: direct
// O(n^6) DFTs and explicit convolution sums over retained modes. Nothing
// here calls the transform or operator code under test.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "bardina/field.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Coeffs = std::vector<Complex>;  // n^3, FFT slot order

/// u_hat(m) = n^{-3} sum_x u(x) exp(-2 pi i m.j / n).
Coeffs dft_forward(const std::vector<double>& samples, int n);

/// u(x_j) = Re sum_m u_hat(m) exp(2 pi i m.j / n).
std::vector<double> dft_inverse(const Coeffs& coeffs, int n);

/// Random real field: Hermitian coefficients with all Nyquist planes and
/// modes with some |m_i| > band set to zero.
Coeffs random_coeffs(int n, int band, std::uint64_t seed);

/// Random divergence-free, dealiased vector field with the certificate set.
bardina::VectorField random_solenoidal(const bardina::GridSpec& grid, std::uint64_t seed, double scale = 1.0);

/// Per-mode symbols with k = 2 pi m / L computed from the integer index.
Coeffs filter(const Coeffs& c, int n, double box_len, double alpha);
std::array<Coeffs, 3> leray(const std::array<Coeffs, 3>& v, int n, double box_len);

/// P [((a.grad) b)_alpha] from the explicit convolution
/// sum_{p+q=m} (a_hat(p).i k(q)) b_hat(q), restricted to retained modes.
std::array<Coeffs, 3> filtered_advection(const bardina::VectorField& a, const bardina::VectorField& b, double alpha);

/// P div((u (x) u)_alpha) for divergence-free u via filtered_advection.
bardina::VectorField nonlinear(const bardina::VectorField& u, double alpha);

/// -P((w.grad)u + (u.grad)w)_alpha + nu Laplacian w - beta w.
bardina::VectorField linearized(const bardina::VectorField& w, const bardina::VectorField& u,
                                const bardina::PhysParams& params);

double max_abs(const Coeffs& c);
double max_abs_diff(const Coeffs& a, const Coeffs& b);
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);
double max_abs(const std::vector<double>& a);

/// Relative difference max|a - b| / max(max|b|, tiny).
double rel_diff(const bardina::VectorField& a, const bardina::VectorField& b);

}  // namespace oracle

#pragma once

#include "bardina/field.hpp"

namespace bardina {

/// Bessel-potential filter (-alpha^2 Laplacian + I)^{-1}: each mode is
/// divided by 1 + alpha^2 |k|^2. Keeps the div_free certificate.
SpectralField helmholtz_filter(const SpectralField& v, double alpha);
VectorField helmholtz_filter(const VectorField& v, double alpha);

/// Leray projection onto divergence-free fields,
/// u_hat -> u_hat - k (k.u_hat) / |k|^2, identity at k = 0.
VectorField leray_project(const VectorField& v);

VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
SpectralField laplacian(const SpectralField& f);
VectorField laplacian(const VectorField& v);

/// Zeroes every mode with some |m_i| above the dealias cutoff.
SpectralField dealias(const SpectralField& v);
VectorField dealias(const VectorField& v);
void dealias_in_place(SpectralField& v);
void dealias_in_place(VectorField& v);

NormBundle norms(const VectorField& v, double alpha);

/// [v, w]_alpha = (v, w)_{L2} + alpha^2 (grad v, grad w)_{L2}.
double h1alpha_inner(const VectorField& v, const VectorField& w, double alpha);
double h1alpha_norm(const VectorField& v, double alpha);

/// (v, w)_{L2} of two scalar fields via Parseval.
double l2_inner(const SpectralField& v, const SpectralField& w);

/// Pressure p_hat = sum_ij (-k_i k_j / |k|^2) (1 + alpha^2 |k|^2)^{-1}
/// (u_i u_j)_hat with the product dealiased; p_hat(0) = 0.
SpectralField pressure_from_velocity(const VectorField& u, double alpha);

/// max over modes of |k.u_hat(k)| / max(1, |u_hat(k)|).
double max_divergence(const VectorField& v);

/// max over modes of |coeff(-m) - conj(coeff(m))|, divided by max(1, max|coeff|).
double hermitian_defect(const SpectralField& f);
double hermitian_defect(const VectorField& v);

/// Replaces coeff(m) by (coeff(m) + conj(coeff(-m))) / 2.
void hermitian_symmetrize(SpectralField& f);
void hermitian_symmetrize(VectorField& v);

/// Sets div_free when max_divergence is within `tol`; returns the result.
bool certify_div_free(VectorField& v, double tol = 1e-10);

/// Symmetric tensor (a_i b_j + a_j b_i) / 2 sampled pointwise, six
/// components in the order xx, xy, xz, yy, yz, zz.
std::vector<PhysicalField> symmetric_products(const PhysicalVector& a, const PhysicalVector& b);

/// Given the spectra of a symmetric tensor T (same order), returns
/// P div((-alpha^2 Laplacian + I)^{-1} T), dealiased, with the div_free
/// certificate set. T is dealiased first.
VectorField projected_filtered_divergence(const std::vector<SpectralField>& tensor, double alpha);

/// Largest |u(x)| (Euclidean) over the physical grid.
double max_speed(const VectorField& u);

/// Largest absolute coefficient difference across all components.
double max_abs_diff(const VectorField& a, const VectorField& b);
double max_abs_coeff(const VectorField& a);

}  // namespace bardina

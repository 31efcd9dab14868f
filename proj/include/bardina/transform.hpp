#pragma once

#include <span>

#include "bardina/field.hpp"

namespace bardina {

/// Physical samples -> Fourier coefficients. The input must hold n^3 values
/// for the grid; anything else is rejected with std::invalid_argument.
/// Output coefficients are exactly Hermitian-symmetric.
SpectralField forward_transform(std::span<const double> samples, const GridSpec& grid);

/// Fourier coefficients -> physical samples (real part of the synthesis).
PhysicalField inverse_transform(const SpectralField& field);

/// Transforms of all three components. Components are processed two at a
/// time through one complex FFT (real/imaginary packing).
VectorField forward_transform(const PhysicalVector& samples, const GridSpec& grid);
PhysicalVector inverse_transform(const VectorField& field);

/// Batched forms used by the nonlinear kernels: any number of fields on one
/// grid, packed pairwise.
std::vector<SpectralField> forward_batch(std::span<const PhysicalField> samples, const GridSpec& grid);
std::vector<PhysicalField> inverse_batch(std::span<const SpectralField* const> fields);

/// Validates a cubic sample count and returns n; throws on non-cubic or odd n.
int cubic_side(std::size_t sample_count);

}  // namespace bardina

#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "bardina/grid.hpp"

namespace bardina {

using Complex = std::complex<double>;

/// One scalar field stored as Fourier coefficients u_hat(m), normalized so
/// that u(x) = sum_m u_hat(m) exp(i k.x) and the L2 integral over the box is
/// L^3 * sum |u_hat|^2.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid) : grid_(grid), coeffs_(grid.size()) {}

  const GridSpec& grid() const { return grid_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  Complex& operator()(int i, int j, int l) { return coeffs_[grid_.index(i, j, l)]; }
  const Complex& operator()(int i, int j, int l) const { return coeffs_[grid_.index(i, j, l)]; }

  /// Access by signed wavenumber index, each m in [-n/2, n/2).
  Complex& at_mode(int mx, int my, int mz) {
    return (*this)(grid_.slot_of(mx), grid_.slot_of(my), grid_.slot_of(mz));
  }
  const Complex& at_mode(int mx, int my, int mz) const {
    return (*this)(grid_.slot_of(mx), grid_.slot_of(my), grid_.slot_of(mz));
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

  friend bool operator==(const SpectralField&, const SpectralField&) = default;

 private:
  GridSpec grid_;
  std::vector<Complex> coeffs_;
};

/// Three components on a shared grid. `div_free` is a certificate set only
/// by operations that guarantee k.u_hat(k) = 0 up to roundoff.
struct VectorField {
  std::array<SpectralField, 3> c;
  bool div_free = false;

  VectorField() = default;
  explicit VectorField(const GridSpec& grid) : c{SpectralField(grid), SpectralField(grid), SpectralField(grid)} {}

  const GridSpec& grid() const { return c[0].grid(); }
  SpectralField& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const SpectralField& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Filter length alpha, damping beta, viscosity nu, and the numerical
/// constant c entering eta(beta).
struct PhysParams {
  double alpha = 1.0;
  double beta = 1.0;
  double nu = 1.0;
  double eta_c = 1.0;

  void validate() const;
  friend bool operator==(const PhysParams&, const PhysParams&) = default;
};

struct NormBundle {
  double l2_sq = 0.0;
  double h1dot_sq = 0.0;
  double h2dot_sq = 0.0;
  double h1alpha_sq = 0.0;
};

/// Physical-space samples of one scalar field, same row-major layout as the
/// coefficients. Sample j sits at x_j = j * L / n.
using PhysicalField = std::vector<double>;
using PhysicalVector = std::array<PhysicalField, 3>;

void require_same_grid(const GridSpec& a, const GridSpec& b);

}  // namespace bardina

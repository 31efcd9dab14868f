#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace bardina {

/// Discretization of the periodic box [0, L)^3 with n modes per direction.
///
/// Storage follows the FFT convention: axis index j in [0, n) carries the
/// integer wavenumber m = j for j < n/2 and m = j - n otherwise, so the full
/// range is m in {-n/2, ..., n/2 - 1}. Arrays are row-major (x slowest, z
/// fastest) in both physical and Fourier space.
struct GridSpec {
  int n = 16;
  double box_len = 2.0 * std::numbers::pi;
  double dealias_fraction = 2.0 / 3.0;

  /// Throws std::invalid_argument when n is odd or < 4, L <= 0, or the
  /// dealias fraction is outside (0, 1].
  void validate() const;

  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
  std::size_t index(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * n + j) * n + l;
  }

  int mode_of(int j) const { return j < n / 2 ? j : j - n; }
  int slot_of(int m) const { return m >= 0 ? m : m + n; }
  bool is_nyquist(int j) const { return j == n / 2; }

  /// Largest |m| retained after dealiasing: |m| <= dealias_fraction * n / 2.
  double cutoff() const { return dealias_fraction * n / 2.0; }
  bool retained(int mx, int my, int mz) const {
    const double c = cutoff();
    return std::abs(mx) <= c && std::abs(my) <= c && std::abs(mz) <= c;
  }

  double spacing() const { return box_len / n; }
  double volume() const { return box_len * box_len * box_len; }
  double k_unit() const { return 2.0 * std::numbers::pi / box_len; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Per-axis physical wavenumbers k = 2*pi*m/L. The Nyquist slot carries
/// k = 0 in every symbol so that all multipliers map real fields to real
/// fields and div(grad) equals the Laplacian mode by mode.
struct Wavenumbers {
  explicit Wavenumbers(const GridSpec& grid);

  std::vector<double> k;   // size n
  std::vector<double> k2;  // size n, k[j]^2

  double squared(int i, int j, int l) const { return k2[i] + k2[j] + k2[l]; }
};

}  // namespace bardina

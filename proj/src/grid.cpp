#include "bardina/grid.hpp"

#include <stdexcept>
#include <string>

namespace bardina {

void GridSpec::validate() const {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("grid n must be even and >= 4, got " + std::to_string(n));
  }
  if (!(box_len > 0.0) || !std::isfinite(box_len)) {
    throw std::invalid_argument("grid box_len must be positive and finite");
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw std::invalid_argument("grid dealias_fraction must lie in (0, 1]");
  }
}

Wavenumbers::Wavenumbers(const GridSpec& grid)
    : k(static_cast<std::size_t>(grid.n)), k2(static_cast<std::size_t>(grid.n)) {
  const double unit = grid.k_unit();
  for (int j = 0; j < grid.n; ++j) {
    const double kj = grid.is_nyquist(j) ? 0.0 : unit * grid.mode_of(j);
    k[static_cast<std::size_t>(j)] = kj;
    k2[static_cast<std::size_t>(j)] = kj * kj;
  }
}

}  // namespace bardina

#pragma once

#include <cstdint>
#include <string>

#include "bardina/field.hpp"

namespace bardina {

enum class FieldKind { shear, taylor_green, abc, random_band };

std::string to_string(FieldKind kind);
/// Throws std::invalid_argument for unknown names.
FieldKind parse_field_kind(const std::string& name);

/// Recipe for an initial velocity or a stationary force. `seed`, `k_min`
/// and `k_max` only matter for random_band, where the band is the shell
/// k_min <= |m| <= k_max of integer wavevectors.
struct FieldRecipe {
  FieldKind kind = FieldKind::shear;
  double amplitude = 0.0;
  std::uint64_t seed = 0;
  int k_min = 1;
  int k_max = 2;

  /// Throws std::invalid_argument when the amplitude is not finite or the
  /// band does not fit inside the retained modes of `grid`.
  void validate(const GridSpec& grid) const;
  friend bool operator==(const FieldRecipe&, const FieldRecipe&) = default;
};

/// Builds the field described by `recipe`. The result is real, dealiased
/// and divergence-free with the certificate set. For random_band the
/// amplitude is the target H^1_alpha norm, hence the alpha argument; the
/// other kinds ignore it.
///
///   shear         A (sin(2 pi y / L), 0, 0)
///   taylor_green  A (sin x cos y cos z, -cos x sin y cos z, 0), x = 2 pi x / L
///   abc           A (sin z + cos y, sin x + cos z, sin y + cos x)
VectorField generate(const FieldRecipe& recipe, const GridSpec& grid, double alpha = 1.0);

}  // namespace bardina

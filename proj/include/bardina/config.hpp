#pragma once

#include <cstdint>
#include <limits>
#include <filesystem>
#include <string>
#include <vector>

#include "bardina/field.hpp"
#include "bardina/fields.hpp"
#include "bardina/stationary.hpp"

namespace bardina {

/// Everything one CLI invocation needs. The INI layout is
///
///   [spectral]   n, box_len, dealias_fraction
///   [params]     alpha, beta, nu, eta_c
///   [initial] [initial_b] [force] [force_b]
///                kind, amplitude, seed, k_min, k_max
///   [dynamics]   dt, t_end, sample_every
///   [stationary] tol, omega, max_iter
///   [attractor]  m, frame_seed, p_list, decay_mode
///
/// Every key is optional; missing keys keep the defaults below. Unknown
/// sections or keys are rejected.
struct RunConfig {
  GridSpec grid;
  PhysParams params;
  FieldRecipe initial{FieldKind::random_band, 1.0, 1, 1, 2};
  FieldRecipe initial_b{FieldKind::random_band, 1.0, 2, 1, 2};
  FieldRecipe force{FieldKind::shear, 0.0, 0, 1, 2};
  FieldRecipe force_b{FieldKind::shear, 0.0, 0, 1, 2};
  double dt = 1e-3;
  double t_end = 1.0;
  int sample_every = 10;
  StationaryOptions stationary;
  int frame_m = 2;
  std::uint64_t frame_seed = 7;
  std::vector<double> p_list{2.0, 4.0, std::numeric_limits<double>::infinity()};
  std::string decay_mode = "zero_force";  // or "steady"

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Full effective config with every key written out; parse_config of the
/// result gives back an equal RunConfig.
std::string serialize_config(const RunConfig& cfg);

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite.
std::string format_double(double v);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& data);

}  // namespace bardina

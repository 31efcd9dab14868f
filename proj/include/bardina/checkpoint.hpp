#pragma once

#include <filesystem>

#include "bardina/field.hpp"

namespace bardina {

/// Binary little-endian state file:
///   "BARD", u32 version (1), u32 n, f64 L, alpha, beta, nu, time,
///   then 3 n^3 coefficients as (f64 re, f64 im), component by component,
///   each in ascending m from -n/2 with m_z fastest.
/// Steady states are stored with time = -1.
struct Checkpoint {
  GridSpec grid;
  PhysParams params;  // eta_c is not stored and reads back as the default
  double time = 0.0;
  VectorField u;
};

inline constexpr double kSteadyStateTime = -1.0;

void write_checkpoint(const std::filesystem::path& path, const VectorField& u, const PhysParams& params, double time);

/// Throws std::runtime_error on a bad magic, version, or truncated file.
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace bardina

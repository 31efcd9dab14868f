#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "bardina/grid.hpp"
#include "bardina/parallel.hpp"

namespace bardina::detail {

// Visits every mode as body(i, j, l, flat_index), one x-slab per task.
template <class Body>
void for_each_mode(const GridSpec& grid, Body&& body) {
  const int n = grid.n;
  for_each_slab(n, [&](int i) {
    std::size_t p = grid.index(i, 0, 0);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l, ++p) body(i, j, l, p);
  });
}

// N simultaneous sums, combined slab by slab in order.
template <std::size_t N, class Body>
std::array<double, N> sum_modes(const GridSpec& grid, Body&& body) {
  const int n = grid.n;
  std::vector<std::array<double, N>> partial(static_cast<std::size_t>(n));
  for_each_slab(n, [&](int i) {
    std::array<double, N> acc{};
    std::size_t p = grid.index(i, 0, 0);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l, ++p) body(i, j, l, p, acc);
    partial[static_cast<std::size_t>(i)] = acc;
  });
  std::array<double, N> total{};
  for (const auto& a : partial)
    for (std::size_t q = 0; q < N; ++q) total[q] += a[q];
  return total;
}

template <class Body>
double max_modes(const GridSpec& grid, Body&& body) {
  const int n = grid.n;
  return max_over_slabs(n, [&](int i) {
    double m = 0.0;
    std::size_t p = grid.index(i, 0, 0);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l, ++p) {
        const double v = body(i, j, l, p);
        if (v > m) m = v;
      }
    return m;
  });
}

}  // namespace bardina::detail

#include "bardina/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "bardina/transform.hpp"
#include "mode_loop.hpp"

namespace bardina {

using detail::for_each_mode;
using detail::max_modes;
using detail::sum_modes;

namespace {

constexpr Complex I{0.0, 1.0};

// Tensor component index for (i, j) in xx, xy, xz, yy, yz, zz order.
constexpr int sym_index(int i, int j) {
  constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return table[i][j];
}

void require_same_grid(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid());
  for (int i = 1; i < 3; ++i) {
    require_same_grid(a[0].grid(), a[i].grid());
    require_same_grid(b[0].grid(), b[i].grid());
  }
}

}  // namespace

SpectralField helmholtz_filter(const SpectralField& v, double alpha) {
  const GridSpec& g = v.grid();
  const Wavenumbers kw(g);
  const double a2 = alpha * alpha;
  SpectralField out(g);
  auto src = v.coeffs();
  auto dst = out.coeffs();
  for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    dst[p] = src[p] / (1.0 + a2 * kw.squared(i, j, l));
  });
  return out;
}

VectorField helmholtz_filter(const VectorField& v, double alpha) {
  require_same_grid(v, v);
  VectorField out(v.grid());
  for (int c = 0; c < 3; ++c) out[c] = helmholtz_filter(v[c], alpha);
  out.div_free = v.div_free;
  return out;
}

VectorField leray_project(const VectorField& v) {
  require_same_grid(v, v);
  const GridSpec& g = v.grid();
  const Wavenumbers kw(g);
  VectorField out(g);
  for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    const double k[3] = {kw.k[i], kw.k[j], kw.k[l]};
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    const Complex u[3] = {v[0].coeffs()[p], v[1].coeffs()[p], v[2].coeffs()[p]};
    if (k2 == 0.0) {
      for (int c = 0; c < 3; ++c) out[c].coeffs()[p] = u[c];
      return;
    }
    const Complex kdotu = (k[0] * u[0] + k[1] * u[1] + k[2] * u[2]) / k2;
    for (int c = 0; c < 3; ++c) out[c].coeffs()[p] = u[c] - k[c] * kdotu;
  });
  out.div_free = true;
  return out;
}

VectorField gradient(const SpectralField& f) {
  const GridSpec& g = f.grid();
  const Wavenumbers kw(g);
  VectorField out(g);
  auto src = f.coeffs();
  for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    const Complex ik = I * src[p];
    out[0].coeffs()[p] = kw.k[i] * ik;
    out[1].coeffs()[p] = kw.k[j] * ik;
    out[2].coeffs()[p] = kw.k[l] * ik;
  });
  return out;
}

SpectralField divergence(const VectorField& v) {
  require_same_grid(v, v);
  const GridSpec& g = v.grid();
  const Wavenumbers kw(g);
  SpectralField out(g);
  auto dst = out.coeffs();
  for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    dst[p] = I * (kw.k[i] * v[0].coeffs()[p] + kw.k[j] * v[1].coeffs()[p] + kw.k[l] * v[2].coeffs()[p]);
  });
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const GridSpec& g = f.grid();
  const Wavenumbers kw(g);
  SpectralField out(g);
  auto src = f.coeffs();
  auto dst = out.coeffs();
  for_each_mode(g, [&](int i, int j, int l, std::size_t p) { dst[p] = -kw.squared(i, j, l) * src[p]; });
  return out;
}

VectorField laplacian(const VectorField& v) {
  VectorField out(v.grid());
  for (int c = 0; c < 3; ++c) out[c] = laplacian(v[c]);
  out.div_free = v.div_free;
  return out;
}

void dealias_in_place(SpectralField& v) {
  const GridSpec& g = v.grid();
  auto data = v.coeffs();
  for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    if (!g.retained(g.mode_of(i), g.mode_of(j), g.mode_of(l))) data[p] = 0.0;
  });
}

void dealias_in_place(VectorField& v) {
  for (int c = 0; c < 3; ++c) dealias_in_place(v[c]);
}

SpectralField dealias(const SpectralField& v) {
  SpectralField out = v;
  dealias_in_place(out);
  return out;
}

VectorField dealias(const VectorField& v) {
  VectorField out = v;
  dealias_in_place(out);
  return out;
}

NormBundle norms(const VectorField& v, double alpha) {
  require_same_grid(v, v);
  const GridSpec& g = v.grid();
  const Wavenumbers kw(g);
  const auto s = sum_modes<3>(g, [&](int i, int j, int l, std::size_t p, std::array<double, 3>& acc) {
    const double a = std::norm(v[0].coeffs()[p]) + std::norm(v[1].coeffs()[p]) + std::norm(v[2].coeffs()[p]);
    const double k2 = kw.squared(i, j, l);
    acc[0] += a;
    acc[1] += k2 * a;
    acc[2] += k2 * k2 * a;
  });
  const double vol = g.volume();
  NormBundle b;
  b.l2_sq = vol * s[0];
  b.h1dot_sq = vol * s[1];
  b.h2dot_sq = vol * s[2];
  b.h1alpha_sq = b.l2_sq + alpha * alpha * b.h1dot_sq;
  return b;
}

double h1alpha_inner(const VectorField& v, const VectorField& w, double alpha) {
  require_same_grid(v, w);
  const GridSpec& g = v.grid();
  const Wavenumbers kw(g);
  const double a2 = alpha * alpha;
  const auto s = sum_modes<1>(g, [&](int i, int j, int l, std::size_t p, std::array<double, 1>& acc) {
    double re = 0.0;
    for (int c = 0; c < 3; ++c) re += (v[c].coeffs()[p] * std::conj(w[c].coeffs()[p])).real();
    acc[0] += (1.0 + a2 * kw.squared(i, j, l)) * re;
  });
  return g.volume() * s[0];
}

double h1alpha_norm(const VectorField& v, double alpha) { return std::sqrt(norms(v, alpha).h1alpha_sq); }

double l2_inner(const SpectralField& v, const SpectralField& w) {
  require_same_grid(v.grid(), w.grid());
  const GridSpec& g = v.grid();
  const auto s = sum_modes<1>(g, [&](int, int, int, std::size_t p, std::array<double, 1>& acc) {
    acc[0] += (v.coeffs()[p] * std::conj(w.coeffs()[p])).real();
  });
  return g.volume() * s[0];
}

std::vector<PhysicalField> symmetric_products(const PhysicalVector& a, const PhysicalVector& b) {
  const std::size_t size = a[0].size();
  std::vector<PhysicalField> t(6, PhysicalField(size));
  const int n = cubic_side(size);
  const std::size_t slab = size / static_cast<std::size_t>(n);
  for_each_slab(n, [&](int s) {
    const std::size_t begin = static_cast<std::size_t>(s) * slab;
    for (std::size_t p = begin; p < begin + slab; ++p) {
      for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
          const double ai = a[static_cast<std::size_t>(i)][p], aj = a[static_cast<std::size_t>(j)][p];
          const double bi = b[static_cast<std::size_t>(i)][p], bj = b[static_cast<std::size_t>(j)][p];
          t[static_cast<std::size_t>(sym_index(i, j))][p] = 0.5 * (ai * bj + aj * bi);
        }
      }
    }
  });
  return t;
}

VectorField projected_filtered_divergence(const std::vector<SpectralField>& tensor, double alpha) {
  if (tensor.size() != 6) throw std::invalid_argument("symmetric tensor needs six components");
  const GridSpec& g = tensor[0].grid();
  for (const auto& t : tensor) require_same_grid(g, t.grid());
  const Wavenumbers kw(g);
  const double a2 = alpha * alpha;
  VectorField out(g);
  for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    if (!g.retained(g.mode_of(i), g.mode_of(j), g.mode_of(l))) {
      for (int c = 0; c < 3; ++c) out[c].coeffs()[p] = 0.0;
      return;
    }
    const double k[3] = {kw.k[i], kw.k[j], kw.k[l]};
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    const double filt = 1.0 / (1.0 + a2 * k2);
    Complex d[3];
    for (int r = 0; r < 3; ++r) {
      Complex acc = 0.0;
      for (int c = 0; c < 3; ++c) acc += k[c] * tensor[static_cast<std::size_t>(sym_index(r, c))].coeffs()[p];
      d[r] = I * filt * acc;
    }
    if (k2 > 0.0) {
      const Complex kd = (k[0] * d[0] + k[1] * d[1] + k[2] * d[2]) / k2;
      for (int r = 0; r < 3; ++r) d[r] -= k[r] * kd;
    }
    for (int r = 0; r < 3; ++r) out[r].coeffs()[p] = d[r];
  });
  out.div_free = true;
  return out;
}

SpectralField pressure_from_velocity(const VectorField& u, double alpha) {
  require_same_grid(u, u);
  const GridSpec& g = u.grid();
  const auto phys = inverse_transform(dealias(u));
  const auto spectra = forward_batch(symmetric_products(phys, phys), g);
  const Wavenumbers kw(g);
  const double a2 = alpha * alpha;
  SpectralField out(g);
  auto dst = out.coeffs();
  for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    const double k2 = kw.squared(i, j, l);
    if (k2 == 0.0 || !g.retained(g.mode_of(i), g.mode_of(j), g.mode_of(l))) {
      dst[p] = 0.0;
      return;
    }
    const double k[3] = {kw.k[i], kw.k[j], kw.k[l]};
    Complex acc = 0.0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) acc += k[r] * k[c] * spectra[static_cast<std::size_t>(sym_index(r, c))].coeffs()[p];
    dst[p] = -acc / (k2 * (1.0 + a2 * k2));
  });
  return out;
}

double max_divergence(const VectorField& v) {
  require_same_grid(v, v);
  const GridSpec& g = v.grid();
  const Wavenumbers kw(g);
  return max_modes(g, [&](int i, int j, int l, std::size_t p) {
    const Complex u[3] = {v[0].coeffs()[p], v[1].coeffs()[p], v[2].coeffs()[p]};
    const double mag = std::sqrt(std::norm(u[0]) + std::norm(u[1]) + std::norm(u[2]));
    const double div = std::abs(kw.k[i] * u[0] + kw.k[j] * u[1] + kw.k[l] * u[2]);
    return div / std::max(1.0, mag);
  });
}

double hermitian_defect(const SpectralField& f) {
  const GridSpec& g = f.grid();
  const int n = g.n;
  auto c = f.coeffs();
  const double scale = std::max(1.0, max_modes(g, [&](int, int, int, std::size_t p) { return std::abs(c[p]); }));
  const double defect = max_modes(g, [&](int i, int j, int l, std::size_t p) {
    const std::size_t q = g.index((n - i) % n, (n - j) % n, (n - l) % n);
    return std::abs(c[q] - std::conj(c[p]));
  });
  return defect / scale;
}

double hermitian_defect(const VectorField& v) {
  double d = 0.0;
  for (int c = 0; c < 3; ++c) d = std::max(d, hermitian_defect(v[c]));
  return d;
}

void hermitian_symmetrize(SpectralField& f) {
  const GridSpec& g = f.grid();
  const int n = g.n;
  const SpectralField src = f;
  auto in = src.coeffs();
  auto out = f.coeffs();
  for_each_mode(g, [&](int i, int j, int l, std::size_t p) {
    const std::size_t q = g.index((n - i) % n, (n - j) % n, (n - l) % n);
    out[p] = 0.5 * (in[p] + std::conj(in[q]));
  });
}

void hermitian_symmetrize(VectorField& v) {
  for (int c = 0; c < 3; ++c) hermitian_symmetrize(v[c]);
}

bool certify_div_free(VectorField& v, double tol) {
  v.div_free = max_divergence(v) <= tol;
  return v.div_free;
}

double max_speed(const VectorField& u) {
  const auto phys = inverse_transform(u);
  const std::size_t size = phys[0].size();
  const int n = u.grid().n;
  const std::size_t slab = size / static_cast<std::size_t>(n);
  return max_over_slabs(n, [&](int s) {
    double m = 0.0;
    const std::size_t begin = static_cast<std::size_t>(s) * slab;
    for (std::size_t p = begin; p < begin + slab; ++p) {
      const double v = std::sqrt(phys[0][p] * phys[0][p] + phys[1][p] * phys[1][p] + phys[2][p] * phys[2][p]);
      if (!(v <= m)) m = v;
    }
    return m;
  });
}

double max_abs_diff(const VectorField& a, const VectorField& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (int c = 0; c < 3; ++c) {
    auto x = a[c].coeffs();
    auto y = b[c].coeffs();
    for (std::size_t p = 0; p < x.size(); ++p) m = std::max(m, std::abs(x[p] - y[p]));
  }
  return m;
}

double max_abs_coeff(const VectorField& a) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c)
    for (const auto& z : a[c].coeffs()) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace bardina

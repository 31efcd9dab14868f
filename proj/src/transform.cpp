#include "bardina/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "bardina/parallel.hpp"

namespace bardina {

namespace {

// In-place complex 3D plans, one pair per grid size. FFTW planning is not
// thread-safe, execution with fftw_execute_dft is.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

const PlanPair& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<PlanPair>();
    const std::size_t size = static_cast<std::size_t>(n) * n * n;
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    slot->forward = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, flags);
    slot->backward = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
    if (!slot->forward || !slot->backward) throw std::runtime_error("FFTW planning failed");
  }
  return *slot;
}

fftw_complex* as_fftw(std::vector<Complex>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

// Forward transform of a + i b, split into the two Hermitian spectra.
void forward_pair(const double* a, const double* b, const GridSpec& grid, SpectralField& out_a,
                  SpectralField* out_b) {
  const int n = grid.n;
  const std::size_t size = grid.size();
  std::vector<Complex> z(size);
  for (std::size_t p = 0; p < size; ++p) z[p] = Complex(a[p], b ? b[p] : 0.0);
  fftw_execute_dft(plans_for(n).forward, as_fftw(z), as_fftw(z));

  const double inv = 1.0 / static_cast<double>(size);
  auto A = out_a.coeffs();
  for (int i = 0; i < n; ++i) {
    const int ni = (n - i) % n;
    for (int j = 0; j < n; ++j) {
      const int nj = (n - j) % n;
      for (int l = 0; l < n; ++l) {
        const int nl = (n - l) % n;
        const std::size_t p = grid.index(i, j, l);
        const Complex zp = z[p];
        const Complex zc = std::conj(z[grid.index(ni, nj, nl)]);
        const Complex s = zp + zc;
        A[p] = Complex(0.5 * s.real() * inv, 0.5 * s.imag() * inv);
        if (out_b) {
          const Complex d = zp - zc;
          out_b->coeffs()[p] = Complex(0.5 * d.imag() * inv, -0.5 * d.real() * inv);
        }
      }
    }
  }
}

void inverse_pair(const SpectralField& a, const SpectralField* b, PhysicalField& out_a,
                  PhysicalField* out_b) {
  const GridSpec& grid = a.grid();
  const std::size_t size = grid.size();
  std::vector<Complex> z(size);
  auto A = a.coeffs();
  if (b) {
    auto B = b->coeffs();
    for (std::size_t p = 0; p < size; ++p) {
      z[p] = Complex(A[p].real() - B[p].imag(), A[p].imag() + B[p].real());
    }
  } else {
    std::copy(A.begin(), A.end(), z.begin());
  }
  fftw_execute_dft(plans_for(grid.n).backward, as_fftw(z), as_fftw(z));
  out_a.resize(size);
  for (std::size_t p = 0; p < size; ++p) out_a[p] = z[p].real();
  if (out_b) {
    out_b->resize(size);
    for (std::size_t p = 0; p < size; ++p) (*out_b)[p] = z[p].imag();
  }
}

}  // namespace

int cubic_side(std::size_t sample_count) {
  const auto n = static_cast<long>(std::llround(std::cbrt(static_cast<double>(sample_count))));
  if (n <= 0 || static_cast<std::size_t>(n * n * n) != sample_count) {
    throw std::invalid_argument("sample array is not cubic (" + std::to_string(sample_count) + " values)");
  }
  if (n % 2 != 0) throw std::invalid_argument("sample array side must be even, got " + std::to_string(n));
  return static_cast<int>(n);
}

SpectralField forward_transform(std::span<const double> samples, const GridSpec& grid) {
  if (cubic_side(samples.size()) != grid.n) {
    throw std::invalid_argument("sample array does not match grid size");
  }
  SpectralField out(grid);
  forward_pair(samples.data(), nullptr, grid, out, nullptr);
  return out;
}

PhysicalField inverse_transform(const SpectralField& field) {
  PhysicalField out;
  inverse_pair(field, nullptr, out, nullptr);
  return out;
}

std::vector<SpectralField> forward_batch(std::span<const PhysicalField> samples, const GridSpec& grid) {
  for (const auto& s : samples) {
    if (s.size() != grid.size()) throw std::invalid_argument("sample array does not match grid size");
  }
  const int count = static_cast<int>(samples.size());
  std::vector<SpectralField> out(samples.size(), SpectralField(grid));
  const int pairs = (count + 1) / 2;
  for_each_slab(pairs, [&](int p) {
    const int a = 2 * p;
    const int b = a + 1;
    const auto ua = static_cast<std::size_t>(a);
    const auto ub = static_cast<std::size_t>(b);
    if (b < count) {
      forward_pair(samples[ua].data(), samples[ub].data(), grid, out[ua], &out[ub]);
    } else {
      forward_pair(samples[ua].data(), nullptr, grid, out[ua], nullptr);
    }
  });
  return out;
}

std::vector<PhysicalField> inverse_batch(std::span<const SpectralField* const> fields) {
  const int count = static_cast<int>(fields.size());
  std::vector<PhysicalField> out(fields.size());
  const int pairs = (count + 1) / 2;
  for_each_slab(pairs, [&](int p) {
    const auto ua = static_cast<std::size_t>(2 * p);
    const auto ub = ua + 1;
    if (2 * p + 1 < count) {
      inverse_pair(*fields[ua], fields[ub], out[ua], &out[ub]);
    } else {
      inverse_pair(*fields[ua], nullptr, out[ua], nullptr);
    }
  });
  return out;
}

VectorField forward_transform(const PhysicalVector& samples, const GridSpec& grid) {
  auto spectra = forward_batch(samples, grid);
  VectorField out(grid);
  for (int i = 0; i < 3; ++i) out[i] = std::move(spectra[static_cast<std::size_t>(i)]);
  return out;
}

PhysicalVector inverse_transform(const VectorField& field) {
  const SpectralField* ptrs[3] = {&field[0], &field[1], &field[2]};
  auto phys = inverse_batch(ptrs);
  return {std::move(phys[0]), std::move(phys[1]), std::move(phys[2])};
}

}  // namespace bardina

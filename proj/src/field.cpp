#include "bardina/field.hpp"

#include <cmath>
#include <stdexcept>

namespace bardina {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) (*this)[i] += o[i];
  div_free = div_free && o.div_free;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) (*this)[i] -= o[i];
  div_free = div_free && o.div_free;
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (int i = 0; i < 3; ++i) (*this)[i] *= s;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

void PhysParams::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(alpha)) throw std::invalid_argument("alpha must be > 0");
  if (!positive(beta)) throw std::invalid_argument("beta must be > 0");
  if (!positive(nu)) throw std::invalid_argument("nu must be > 0");
  if (!positive(eta_c)) throw std::invalid_argument("eta_c must be > 0");
}

}  // namespace bardina

#include "fowler/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fowler/fft.hpp"

namespace fowler {

SpatialGrid SpatialGrid::with_length(std::size_t n, double length, double origin) {
  if (n == 0 || !(length > 0.0)) throw std::invalid_argument("SpatialGrid: need n > 0 and length > 0");
  return SpatialGrid{n, length / static_cast<double>(n), origin};
}

double SpatialGrid::frequency(std::size_t k) const {
  const double L = length();
  const auto kk = static_cast<double>(k);
  return k <= n / 2 ? kk / L : (kk - static_cast<double>(n)) / L;
}

void SpatialGrid::validate() const {
  if (n < 8) throw std::invalid_argument("SpatialGrid: n_points must be >= 8 (got " + std::to_string(n) + ")");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("SpatialGrid: dx must be positive");
  if (!std::isfinite(origin)) throw std::invalid_argument("SpatialGrid: origin must be finite");
}

Field::Field(SpatialGrid g, std::vector<double> v, Boundary b) : grid(g), values(std::move(v)), boundary(b) {}

double Field::at(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  if (i >= 0 && i < n) return values[static_cast<std::size_t>(i)];
  switch (boundary.kind) {
    case BoundaryKind::periodic: {
      std::ptrdiff_t r = i % n;
      if (r < 0) r += n;
      return values[static_cast<std::size_t>(r)];
    }
    case BoundaryKind::far_field:
      return boundary.far_value;
    case BoundaryKind::linear_extension:
      if (i < 0) return values[0] + static_cast<double>(i) * (values[1] - values[0]);
      return values[n - 1] + static_cast<double>(i - (n - 1)) * (values[n - 1] - values[n - 2]);
  }
  return 0.0;
}

void Field::validate() const {
  grid.validate();
  if (values.size() != grid.n) throw std::invalid_argument("Field: sample count does not match grid");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("Field: non-finite sample");
  }
  if (!std::isfinite(boundary.far_value)) throw std::invalid_argument("Field: non-finite far-field value");
}

double l2_norm(std::span<const double> v, double dx) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s * dx);
}

double l2_norm(const Field& f) { return l2_norm(f.values, f.grid.dx); }

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const cplx& z : f.values) s += std::norm(z);
  return std::sqrt(s * f.grid.dx);
}

double l2_distance(const Field& a, const Field& b) {
  if (a.size() != b.size()) throw std::invalid_argument("l2_distance: size mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a.values[j] - b.values[j];
    s += d * d;
  }
  return std::sqrt(s * a.grid.dx);
}

Spectrum to_spectrum(const Field& f) {
  std::vector<cplx> buf(f.values.begin(), f.values.end());
  Spectrum s{f.grid, std::vector<cplx>(f.size())};
  fft_for(f.size()).forward(buf, s.coeffs);
  return s;
}

Spectrum to_spectrum(const ComplexField& f) {
  Spectrum s{f.grid, std::vector<cplx>(f.values.size())};
  fft_for(f.values.size()).forward(f.values, s.coeffs);
  return s;
}

ComplexField to_complex_field(const Spectrum& s) {
  ComplexField f{s.grid, std::vector<cplx>(s.coeffs.size())};
  fft_for(s.coeffs.size()).inverse(s.coeffs, f.values);
  const double inv_n = 1.0 / static_cast<double>(s.coeffs.size());
  for (cplx& z : f.values) z *= inv_n;
  return f;
}

Field to_field(const Spectrum& s, double imag_tolerance, double reference_scale, Boundary b) {
  ComplexField c = to_complex_field(s);
  double max_re = 0.0;
  double max_im = 0.0;
  std::vector<double> v(c.values.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = c.values[j].real();
    max_re = std::max(max_re, std::abs(c.values[j].real()));
    max_im = std::max(max_im, std::abs(c.values[j].imag()));
  }
  const double ref = std::max(max_re, reference_scale);
  if (max_im > imag_tolerance * ref && max_im > 0.0) {
    throw std::runtime_error("to_field: imaginary residue " + std::to_string(max_im) +
                             " exceeds tolerance; spectrum is not conjugate-symmetric");
  }
  return Field(s.grid, std::move(v), b);
}

}  // namespace fowler

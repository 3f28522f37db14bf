#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fowler {

using cplx = std::complex<double>;

/// Uniform 1-D sample grid: x_j = origin + j * dx, j = 0 .. n-1.
struct SpatialGrid {
  std::size_t n = 0;
  double dx = 0.0;
  double origin = 0.0;

  static SpatialGrid with_length(std::size_t n, double length, double origin = 0.0);

  double length() const { return static_cast<double>(n) * dx; }
  double x(std::size_t j) const { return origin + static_cast<double>(j) * dx; }

  /// Signed discrete frequency of DFT slot k: k/L for k <= n/2, (k-n)/L above.
  double frequency(std::size_t k) const;
  double nyquist() const { return 0.5 / dx; }
  bool is_power_of_two() const { return n != 0 && (n & (n - 1)) == 0; }

  /// Throws std::invalid_argument unless n >= 8 and dx > 0.
  void validate() const;
};

enum class BoundaryKind {
  periodic,
  far_field,         // constant value outside the window
  linear_extension,  // affine continuation of the two edge samples
};

struct Boundary {
  BoundaryKind kind = BoundaryKind::periodic;
  double far_value = 0.0;

  static Boundary periodic() { return {}; }
  static Boundary far_field(double value) { return {BoundaryKind::far_field, value}; }
  static Boundary linear_extension() { return {BoundaryKind::linear_extension, 0.0}; }
};

/// Real samples of a function of x.
struct Field {
  SpatialGrid grid;
  std::vector<double> values;
  Boundary boundary;

  Field() = default;
  Field(SpatialGrid g, std::vector<double> v, Boundary b = Boundary::periodic());

  template <class F>
  static Field sample(const SpatialGrid& g, F&& f, Boundary b = Boundary::periodic()) {
    std::vector<double> v(g.n);
    for (std::size_t j = 0; j < g.n; ++j) v[j] = f(g.x(j));
    return Field(g, std::move(v), b);
  }

  std::size_t size() const { return values.size(); }

  /// Sample at any integer index, resolving out-of-window indices through the
  /// boundary rule.
  double at(std::ptrdiff_t i) const;

  /// Throws std::invalid_argument on size mismatch or non-finite samples.
  void validate() const;
};

/// Complex samples; used for the one-sided band perturbation.
struct ComplexField {
  SpatialGrid grid;
  std::vector<cplx> values;
};

/// Unnormalised DFT coefficients c_k = sum_j f_j exp(-2 pi i k j / n).
/// Slot k carries the frequency grid.frequency(k).
struct Spectrum {
  SpatialGrid grid;
  std::vector<cplx> coeffs;

  double frequency(std::size_t k) const { return grid.frequency(k); }
};

/// Discrete L2 norm sqrt(dx * sum |v_j|^2).
double l2_norm(const Field& f);
double l2_norm(std::span<const double> v, double dx);
double l2_norm(const ComplexField& f);
double l2_distance(const Field& a, const Field& b);

Spectrum to_spectrum(const Field& f);
Spectrum to_spectrum(const ComplexField& f);

/// Inverse transform; throws std::runtime_error when the imaginary residue
/// exceeds imag_tolerance relative to max(largest real magnitude, reference_scale).
Field to_field(const Spectrum& s, double imag_tolerance = 1e-8, double reference_scale = 0.0,
               Boundary b = Boundary::periodic());
ComplexField to_complex_field(const Spectrum& s);

/// Multiplies every coefficient by m(frequency). At the Nyquist slot of an
/// even grid the multiplier is replaced by Re m so that real fields stay real.
template <class M>
void apply_multiplier(Spectrum& s, M&& m) {
  const std::size_t n = s.coeffs.size();
  for (std::size_t k = 0; k < n; ++k) {
    cplx mk = m(s.frequency(k));
    if (n % 2 == 0 && k == n / 2) mk = cplx{mk.real(), 0.0};
    s.coeffs[k] *= mk;
  }
}

}  // namespace fowler

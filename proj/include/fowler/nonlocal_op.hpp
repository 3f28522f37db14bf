#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fowler/grid.hpp"
#include "fowler/symbol.hpp"

namespace fowler {

enum class ConvolutionMethod { fft, direct };

/// Quadrature form of the nonlocal operator on a uniform grid:
///
///   I_dx[phi]_j = dx^{-4/3} sum_{l >= 1} l^{-1/3} (phi_{j-l+1} - 2 phi_{j-l} + phi_{j-l-1})
///
/// The weights are translation invariant, so the operator is precomputed once
/// per grid as a convolution kernel.
///
/// Periodic fields: the infinite sum is taken over whole periods. Because the
/// wrapped second differences have zero mean, each residue class can be
/// regularised by subtracting its first weight, which makes the periodised
/// weights converge like q^{-4/3}; they are summed directly for a fixed number
/// of periods and the remainder is closed by Euler-Maclaurin. The resulting
/// kernel annihilates constants exactly and preserves the sample sum.
///
/// Far-field / linear-extension fields: the second differences vanish
/// upstream of the window, so the sum is finite and is evaluated as a causal
/// Toeplitz product.
class QuadratureOperator {
 public:
  explicit QuadratureOperator(const SpatialGrid& grid, ConvolutionMethod method = ConvolutionMethod::fft);

  const SpatialGrid& grid() const { return grid_; }
  ConvolutionMethod method() const { return method_; }

  Field apply(const Field& f) const;

  /// Periodic hot path; u and out have grid.n entries and must not alias.
  void apply_periodic(std::span<const double> u, std::span<double> out) const;

  /// Non-periodic evaluation; samples upstream of the window come from b.
  void apply_open(std::span<const double> u, const Boundary& b, std::span<double> out) const;

  /// out_j = sum_m kernel[m] u_{(j - m) mod n}
  std::span<const double> periodic_kernel() const { return kernel_; }

  /// Eigenvalue of the periodic operator on DFT slot k (slot 0 is exactly 0).
  std::span<const cplx> multiplier() const { return multiplier_; }

 private:
  SpatialGrid grid_;
  ConvolutionMethod method_;
  std::vector<double> weights_;     // weights_[m] = (m + 1)^{-1/3}
  std::vector<double> kernel_;      // periodic impulse response, includes dx^{-4/3}
  std::vector<cplx> multiplier_;    // DFT of kernel_
};

Field apply_quadrature(const Field& f, ConvolutionMethod method = ConvolutionMethod::fft);

/// Singular-integral form
///   I[phi](x) = C_I int_{-inf}^0 (phi(x+z) - phi(x) - phi'(x) z) / |z|^{7/3} dz,  C_I = 4/9.
///
/// |z| < dx uses the Taylor term (1/2) phi'' |z|^2, which integrates to
/// (3/4) phi'' dx^{2/3}. |z| >= dx uses the trapezoidal rule on the grid
/// nodes z = -m dx; the infinite node sums of the local terms are closed with
/// the Riemann zeta function. phi' and phi'' are centred differences.
Field apply_singular(const Field& f);

/// Fourier-multiplier form: multiply the DFT by sigma_I(xi_k). Needs a
/// periodic field; throws when the inverse transform leaves an imaginary
/// residue above 1e-8.
Field apply_spectral(const Field& f, const SymbolParams& p);

/// Exact value of I[x_+^p](x) = Gamma(2/3) Gamma(p+1) / Gamma(p - 1/3) x^{p - 4/3}
/// for p >= 2 and x > 0.
double causal_oracle(double p, double x);

/// One row of the operator cross-check table.
struct OperatorCheckRow {
  std::string test;
  std::size_t grid_n = 0;
  std::string metric;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Cross-agreement, refinement, causal and annihilation checks. n is the
/// finest grid of the Gaussian and refinement studies; length their period.
std::vector<OperatorCheckRow> operator_check(std::size_t n = 1024, double length = 20.0);

/// Least-squares slope of log(errors) against log(spacings).
double fitted_order(std::span<const double> spacings, std::span<const double> errors);

}  // namespace fowler

#pragma once

#include <complex>
#include <cstddef>

namespace fowler {

using cplx = std::complex<double>;

/// Constants of the nonlocal operator and the constant background state.
///
/// The multiplier of the nonlocal operator alone is
///   sigma(xi) = -a_I |xi|^{4/3} + i b_I xi |xi|^{1/3}
/// under the transform convention F f(xi) = int f(x) exp(-2 pi i x xi) dx.
struct SymbolParams {
  double a_I = 0.0;
  double b_I = 0.0;
  double C_I = 4.0 / 9.0;
  double u_phi = 0.0;

  /// Throws std::invalid_argument when a_I or b_I is not positive or C_I != 4/9.
  void validate() const;
};

struct SpectralProfile {
  double alpha = 0.0;    // -min Re phi_I
  double xi_star = 0.0;  // argmin of Re phi_I on xi > 0
  double xi_c = 0.0;     // right edge of the unstable band
};

/// Both evaluation routes for a_I and b_I.
struct ConstantRoutes {
  double a_closed = 0.0;
  double b_closed = 0.0;
  double a_quadrature = 0.0;
  double b_quadrature = 0.0;

  double max_relative_gap() const;
};

inline constexpr double kConstantRouteTolerance = 1e-6;

/// Evaluates a_I, b_I from the Gamma-function closed form and from adaptive
/// quadrature of the one-sided oscillatory integral that defines the symbol.
ConstantRoutes constant_routes();

/// Runs both routes and returns the closed-form constants. Throws
/// std::runtime_error when the routes disagree beyond 1e-6 relative.
/// The quadrature is evaluated once per process and cached.
SymbolParams derive_constants(double u_phi = 0.0);

cplx sigma_I(double xi, const SymbolParams& p);
cplx psi_I(double xi, const SymbolParams& p);
cplx phi_I(double xi, const SymbolParams& p);

/// Re phi_I, which is independent of u_phi.
double re_phi_I(double xi, const SymbolParams& p);

/// Closed-form alpha, xi*, xi_c.
SpectralProfile spectral_profile(const SymbolParams& p);

/// Dense-grid minimisation of Re psi_I over (0, 2 xi_c) with parabolic
/// refinement of the minimiser and linear interpolation of the sign change.
SpectralProfile spectral_profile_by_grid(const SymbolParams& p, std::size_t samples = 1'000'000);

struct BandRate {
  double beta = 0.0;       // -max Re phi_I over [c, d]
  double re_phi_c = 0.0;
  double re_phi_d = 0.0;
  bool c_below_d = false;  // Re phi(c) < Re phi(d)
  bool max_at_d = false;   // Re phi(d) = -beta, i.e. Re phi <= Re phi(d) on [c, d]
  bool conditions_hold() const { return c_below_d && max_at_d && beta > 0.0; }
};

/// Growth rate guaranteed on the band [c, d], found by grid maximisation of
/// Re phi_I. Throws std::invalid_argument when c <= 0, d < c, or the band
/// touches the stable region (max Re phi_I >= 0).
BandRate band_rate(double c, double d, const SymbolParams& p, std::size_t samples = 10'000);

}  // namespace fowler

#pragma once

#include <span>
#include <vector>

#include "fowler/config.hpp"
#include "fowler/grid.hpp"
#include "fowler/symbol.hpp"
#include "fowler/trajectory.hpp"

namespace fowler {

inline constexpr double kDefaultSpectralDt = 1e-2;

/// Integrating-factor midpoint stepper for the perturbation equation
///   v_t + (v^2/2 + u_phi v)_x + I[v] - v_xx = 0
/// on a periodic grid. With E(t) = exp(-t phi) and N(v) = -(v^2/2)_x:
///   v_mid = E(dt/2) (v + dt/2 N(v))
///   v+    = E(dt) v + dt E(dt/2) N(v_mid)
/// v^2 is formed on a 3/2-padded grid. A stepper caches its propagators and
/// belongs to one trajectory at a time.
class DuhamelStepper {
 public:
  DuhamelStepper(const SpatialGrid& grid, const SymbolParams& p, bool nonlinear = true);

  const SpatialGrid& grid() const { return grid_; }

  /// Advances DFT coefficients in place. Returns false if a physical sample
  /// seen during the step exceeded the divergence bound or became non-finite.
  bool step(std::span<cplx> vhat, double dt) const;
  Field step(const Field& v, double dt) const;

  /// N(v) in DFT coefficients; Nyquist and mean slots are zero.
  void nonlinear_term(std::span<const cplx> vhat, std::span<cplx> out) const;

  /// exp(-t phi(xi_k)) on every slot; real at the Nyquist slot.
  std::vector<cplx> propagator(double t) const;

 private:
  SpatialGrid grid_;
  SymbolParams params_;
  bool nonlinear_;
  std::size_t padded_;
  std::vector<cplx> phi_;
  mutable double cached_dt_ = -1.0;
  mutable std::vector<cplx> e_half_, e_full_;
  mutable double last_peak_ = 0.0;
};

Field duhamel_step(const Field& v, double dt, const SymbolParams& p, bool nonlinear = true);

/// Runs from build_initial(cfg) - u_phi. Records ||v||, and the deviation
/// D(t) = ||v(t) - S(t) v0|| with ||S(t) v0|| at every step.
Trajectory run_mild(const SimConfig& cfg);

}  // namespace fowler

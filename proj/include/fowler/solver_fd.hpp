#pragma once

#include <span>
#include <vector>

#include "fowler/config.hpp"
#include "fowler/grid.hpp"
#include "fowler/nonlocal_op.hpp"
#include "fowler/symbol.hpp"
#include "fowler/trajectory.hpp"

namespace fowler {

struct FdOptions {
  bool flux = true;  // test hook: false drops the Burgers flux
};

/// Explicit scheme
///   u_j^{n+1} = u_j - dt/(2dx) (u_j^2 - u_{j-1}^2) + dt/dx^2 (u_{j+1} - 2u_j + u_{j-1}) - dt I_dx[u]_j
/// with I_dx the quadrature form of the nonlocal operator.
class FdStepper {
 public:
  FdStepper(const SpatialGrid& grid, const Boundary& boundary, FdOptions opts = {});

  const SpatialGrid& grid() const { return op_.grid(); }
  const Boundary& boundary() const { return boundary_; }

  /// One step; u and out must not alias.
  void step(std::span<const double> u, double dt, std::span<double> out) const;
  Field step(const Field& u, double dt) const;

  /// Eigenvalues lambda_k of the linear part on DFT slot k (periodic grid):
  /// one step multiplies slot k by 1 - dt lambda_k when the flux is off.
  std::vector<cplx> linear_symbol() const;

  /// min(dx^2/4, 0.5/max|lambda_k|)
  double dt_limit() const;

 private:
  QuadratureOperator op_;
  Boundary boundary_;
  FdOptions opts_;
};

Field fd_step(const Field& u, double dt, FdOptions opts = {});

/// Iterates the scheme to cfg.t_end. With cfg.wave_frame the stepped state is
/// v = u - u_phi, i.e. the flux is v^2/2 in the frame moving at u_phi.
/// dt defaults to the step policy; a larger requested dt is kept and a
/// warning is attached to the trajectory.
/// Throws DivergenceError with the partial run attached.
Trajectory run_fd(const SimConfig& cfg);

}  // namespace fowler

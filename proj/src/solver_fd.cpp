#include "fowler/solver_fd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fowler/simd/kernels.hpp"

namespace fowler {

FdStepper::FdStepper(const SpatialGrid& grid, const Boundary& boundary, FdOptions opts)
    : op_(grid), boundary_(boundary), opts_(opts) {}

void FdStepper::step(std::span<const double> u, double dt, std::span<double> out) const {
  const std::size_t n = grid().n;
  const double dx = grid().dx;
  if (u.size() != n || out.size() != n) throw std::invalid_argument("FdStepper: size mismatch");

  thread_local std::vector<double> q, ext;
  q.resize(n);
  ext.resize(n + 2);
  std::copy(u.begin(), u.end(), ext.begin() + 1);
  if (boundary_.kind == BoundaryKind::periodic) {
    op_.apply_periodic(u, q);
    ext[0] = u[n - 1];
    ext[n + 1] = u[0];
  } else {
    op_.apply_open(u, boundary_, q);
    const Field f(grid(), std::vector<double>(u.begin(), u.end()), boundary_);
    ext[0] = f.at(-1);
    ext[n + 1] = f.at(static_cast<std::ptrdiff_t>(n));
  }
  const simd::FdCoefficients c{opts_.flux ? dt / (2.0 * dx) : 0.0, dt / (dx * dx), dt};
  simd::active_kernels().fd_update(c, ext.data() + 1, q.data(), out.data(), n);
}

Field FdStepper::step(const Field& u, double dt) const {
  u.validate();
  Field out(u.grid, std::vector<double>(u.size()), u.boundary);
  step(u.values, dt, out.values);
  return out;
}

std::vector<cplx> FdStepper::linear_symbol() const {
  const std::size_t n = grid().n;
  const double dx = grid().dx;
  const auto m = op_.multiplier();
  std::vector<cplx> lambda(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    lambda[k] = 4.0 * s * s / (dx * dx) + m[k];
  }
  return lambda;
}

double FdStepper::dt_limit() const {
  double lmax = 0.0;
  for (const cplx& l : linear_symbol()) lmax = std::max(lmax, std::abs(l));
  const double dx = grid().dx;
  return std::min(0.25 * dx * dx, 0.5 / lmax);
}

Field fd_step(const Field& u, double dt, FdOptions opts) { return FdStepper(u.grid, u.boundary, opts).step(u, dt); }

Trajectory run_fd(const SimConfig& cfg) {
  cfg.validate();
  const double u_phi = cfg.params.u_phi;
  const double shift = cfg.wave_frame ? u_phi : 0.0;
  Boundary boundary = cfg.boundary;
  boundary.far_value -= shift;
  const FdStepper stepper(cfg.grid, boundary);
  const double limit = stepper.dt_limit();

  Trajectory tr;
  tr.scheme = Scheme::fd;
  tr.u_phi = u_phi;
  const StepPlan plan = plan_steps(cfg.t_end, cfg.dt.value_or(limit));
  tr.dt = plan.dt;
  if (plan.dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt=" << plan.dt << " exceeds the step policy limit " << limit;
    tr.warnings.push_back(os.str());
  }

  // State is u in the lab frame, v = u - u_phi in the wave frame.
  Field u = build_initial(cfg);
  for (double& x : u.values) x -= shift;
  const double base = u_phi - shift;

  const std::size_t n = cfg.grid.n;
  std::vector<double> next(n), pert(n);
  auto record = [&](double t, bool snap) {
    for (std::size_t j = 0; j < n; ++j) pert[j] = u.values[j] - base;
    const double l2 = std::sqrt(cfg.grid.dx * simd::active_kernels().sum_squares(pert.data(), n));
    tr.l2_series.push_back({t, l2});
    if (snap) {
      Field s = u;
      for (double& x : s.values) x += shift;
      tr.times.push_back(t);
      tr.snapshots.push_back(std::move(s));
    }
  };

  record(0.0, true);
  for (std::size_t k = 1; k <= plan.steps; ++k) {
    stepper.step(u.values, plan.dt, next);
    if (!within_bounds(next)) throw DivergenceError(k, static_cast<double>(k) * plan.dt, std::move(tr));
    u.values.swap(next);
    record(static_cast<double>(k) * plan.dt, is_snapshot_step(k, plan.steps, cfg.snapshot_every));
  }
  return tr;
}

}  // namespace fowler

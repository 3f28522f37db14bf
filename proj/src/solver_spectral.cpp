#include "fowler/solver_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fowler/fft.hpp"
#include "fowler/simd/kernels.hpp"

namespace fowler {

DuhamelStepper::DuhamelStepper(const SpatialGrid& grid, const SymbolParams& p, bool nonlinear)
    : grid_(grid), params_(p), nonlinear_(nonlinear) {
  grid_.validate();
  if (grid_.n % 2 != 0) throw std::invalid_argument("DuhamelStepper: n must be even");
  padded_ = 3 * grid_.n / 2;
  phi_.resize(grid_.n);
  for (std::size_t k = 0; k < grid_.n; ++k) phi_[k] = phi_I(grid_.frequency(k), p);
}

std::vector<cplx> DuhamelStepper::propagator(double t) const {
  const std::size_t n = grid_.n;
  std::vector<cplx> e(n);
  for (std::size_t k = 0; k < n; ++k) e[k] = std::exp(-t * phi_[k]);
  e[n / 2] = cplx{e[n / 2].real(), 0.0};
  return e;
}

void DuhamelStepper::nonlinear_term(std::span<const cplx> vhat, std::span<cplx> out) const {
  const std::size_t n = grid_.n, M = padded_, half = n / 2;
  thread_local std::vector<cplx> pad, phys;
  pad.assign(M, cplx{});
  phys.resize(M);
  for (std::size_t k = 0; k < half; ++k) pad[k] = vhat[k];
  for (std::size_t k = half + 1; k < n; ++k) pad[k + (M - n)] = vhat[k];
  fft_for(M).inverse(pad, phys);
  const double inv_n = 1.0 / static_cast<double>(n);
  double peak = 0.0;
  for (cplx& z : phys) {
    const double v = z.real() * inv_n;
    peak = std::max(peak, std::abs(v));
    z = cplx{v * v, 0.0};
  }
  last_peak_ = peak;
  fft_for(M).forward(phys, pad);
  const double scale = static_cast<double>(n) / static_cast<double>(M);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == half || k == 0) {
      out[k] = cplx{};
      continue;
    }
    const std::size_t src = k < half ? k : k + (M - n);
    const double xi = grid_.frequency(k);
    out[k] = cplx{0.0, -std::numbers::pi * xi} * (scale * pad[src]);
  }
}

bool DuhamelStepper::step(std::span<cplx> vhat, double dt) const {
  const std::size_t n = grid_.n;
  thread_local std::vector<cplx> nl, mid;
  if (dt != cached_dt_) {
    e_half_ = propagator(0.5 * dt);
    e_full_ = propagator(dt);
    cached_dt_ = dt;
  }
  const auto& e_half = e_half_;
  const auto& e_full = e_full_;
  const auto& kern = simd::active_kernels();

  if (!nonlinear_) {
    kern.complex_multiply(e_full.data(), vhat.data(), n);
    return true;
  }
  nl.resize(n);
  mid.resize(n);
  nonlinear_term(vhat, nl);
  bool bounded = last_peak_ <= kDivergenceBound;
  for (std::size_t k = 0; k < n; ++k) mid[k] = vhat[k] + (0.5 * dt) * nl[k];
  kern.complex_multiply(e_half.data(), mid.data(), n);
  nonlinear_term(mid, nl);
  bounded = bounded && last_peak_ <= kDivergenceBound;
  kern.complex_multiply(e_half.data(), nl.data(), n);
  kern.complex_multiply(e_full.data(), vhat.data(), n);
  for (std::size_t k = 0; k < n; ++k) vhat[k] += dt * nl[k];
  for (const cplx& z : vhat) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return bounded;
}

Field DuhamelStepper::step(const Field& v, double dt) const {
  v.validate();
  Spectrum s = to_spectrum(v);
  if (!step(s.coeffs, dt)) throw std::runtime_error("duhamel_step: non-finite state");
  return to_field(s, 1e-8, l2_norm(v) / std::sqrt(v.grid.length()));
}

Field duhamel_step(const Field& v, double dt, const SymbolParams& p, bool nonlinear) {
  return DuhamelStepper(v.grid, p, nonlinear).step(v, dt);
}

namespace {

// ||v|| from DFT coefficients: dx sum |v_j|^2 = (dx / n) sum |c_k|^2.
double spectral_l2(std::span<const cplx> c, double dx) {
  const auto* d = reinterpret_cast<const double*>(c.data());
  return std::sqrt(dx / static_cast<double>(c.size()) * simd::active_kernels().sum_squares(d, 2 * c.size()));
}

}  // namespace

Trajectory run_mild(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.boundary.kind != BoundaryKind::periodic) throw std::invalid_argument("run_mild: needs periodic boundaries");
  const SpatialGrid& g = cfg.grid;
  const std::size_t n = g.n;
  const double u_phi = cfg.params.u_phi;
  const DuhamelStepper stepper(g, cfg.params);

  Field v0 = build_initial(cfg);
  for (double& x : v0.values) x -= u_phi;
  Spectrum s0 = to_spectrum(v0);
  // Drop the Nyquist slot so the real and spectral states agree.
  s0.coeffs[n / 2] = cplx{};
  std::vector<cplx> vhat = s0.coeffs;

  Trajectory tr;
  tr.scheme = Scheme::spectral;
  tr.u_phi = u_phi;
  const StepPlan plan = plan_steps(cfg.t_end, cfg.dt.value_or(kDefaultSpectralDt));
  tr.dt = plan.dt;

  std::vector<cplx> lin(n), diff(n);
  const double scale_ref = l2_norm(v0) / std::sqrt(g.length());
  auto record = [&](double t, bool snap) {
    tr.l2_series.push_back({t, spectral_l2(vhat, g.dx)});
    if (snap) {
      Spectrum s{g, vhat};
      Field u = to_field(s, 1e-8, scale_ref);
      for (double& x : u.values) x += u_phi;
      tr.times.push_back(t);
      tr.snapshots.push_back(std::move(u));
    }
  };
  auto record_deviation = [&](double t) {
    for (std::size_t k = 0; k < n; ++k) {
      lin[k] = s0.coeffs[k] * std::exp(-t * phi_I(g.frequency(k), cfg.params));
      diff[k] = vhat[k] - lin[k];
    }
    lin[n / 2] = cplx{};
    diff[n / 2] = vhat[n / 2];
    tr.deviation.push_back({t, spectral_l2(diff, g.dx), spectral_l2(lin, g.dx)});
  };

  record(0.0, true);
  record_deviation(0.0);
  for (std::size_t k = 1; k <= plan.steps; ++k) {
    const double t = static_cast<double>(k) * plan.dt;
    if (!stepper.step(vhat, plan.dt)) throw DivergenceError(k, t, std::move(tr));
    record(t, is_snapshot_step(k, plan.steps, cfg.snapshot_every));
    record_deviation(t);
  }
  return tr;
}

}  // namespace fowler

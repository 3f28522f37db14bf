#include "fowler/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fowler/fft.hpp"
#include "fowler/kernel.hpp"
#include "fowler/solver_fd.hpp"
#include "fowler/solver_spectral.hpp"

namespace fowler {

ComplexField build_w0(double c, double d, const SpatialGrid& grid) {
  grid.validate();
  if (!(c > 0.0) || !(d > c)) throw std::invalid_argument("build_w0: need 0 < c < d");
  if (!(grid.nyquist() > d)) throw std::invalid_argument("build_w0: band lies above the grid Nyquist frequency");
  if (grid.length() < 10.0 / (d - c)) throw std::invalid_argument("build_w0: grid shorter than 10/(d-c)");
  const std::size_t n = grid.n;
  const double amp = 1.0 / std::sqrt(d - c);
  std::vector<cplx> spec(n, cplx{}), out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = grid.frequency(k);
    if (xi >= c && xi <= d) spec[k] = amp * std::polar(1.0, 2.0 * std::numbers::pi * xi * grid.origin);
  }
  fft_for(n).inverse(spec, out);
  const double scale = 1.0 / grid.length();
  for (cplx& z : out) z *= scale;
  return {grid, std::move(out)};
}

Field build_w0_real(double c, double d, const SpatialGrid& grid) {
  const ComplexField w = build_w0(c, d, grid);
  std::vector<double> v(w.values.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::numbers::sqrt2 * w.values[j].real();
  return Field(grid, std::move(v));
}

cplx w0_formula(double x, double c, double d) {
  const double w = d - c;
  if (x == 0.0) return cplx{std::sqrt(w), 0.0};
  const double pi = std::numbers::pi;
  return std::polar(std::sin(pi * w * x) / (pi * x * std::sqrt(w)), pi * (c + d) * x);
}

SpatialGrid witness_grid(std::size_t n, double length) { return SpatialGrid::with_length(n, length, -0.5 * length); }

Check check_le(std::string name, double value, double bound, std::string detail) {
  return {std::move(name), value, bound, "<=", value <= bound, std::move(detail)};
}

Check check_ge(std::string name, double value, double bound, std::string detail) {
  return {std::move(name), value, bound, ">=", value >= bound, std::move(detail)};
}

bool RunReport::all_pass() const {
  for (const Check& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void write_report(std::ostream& os, const RunReport& r) {
  os << std::setprecision(10);
  os << "# " << r.title << '\n';
  for (const auto& line : r.config) os << "config " << line << '\n';
  os << "seed " << r.seed << '\n';
  if (r.fitted_rate) os << "fitted_rate " << *r.fitted_rate << '\n';
  if (r.growth_factor) os << "growth_factor " << *r.growth_factor << '\n';
  for (const Check& c : r.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.value << ' ' << c.relation << ' ' << c.bound;
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
  }
  os << "result " << (r.all_pass() ? "PASS" : "FAIL") << '\n';
  os << "wall_seconds " << std::setprecision(3) << r.wall_seconds << '\n';
}

std::vector<Check> InstabilityWitness::consistency() const {
  std::vector<Check> out;
  const double rel_beta = std::abs(beta - (alpha - gamma)) / alpha;
  out.push_back(check_le("witness beta = alpha - gamma", rel_beta, 1e-14, "relative mismatch"));
  out.push_back(check_ge("witness gamma > 0", gamma, 0.0));
  out.push_back(check_le("witness gamma < ln2/(N t0)", gamma, std::log(2.0) / (static_cast<double>(N) * t0)));
  const double delta_formula = std::exp(-alpha * static_cast<double>(N) * t0) * std::expm1(alpha * t0) / (4.0 * b0);
  out.push_back(check_le("witness delta formula", std::abs(delta - delta_formula) / delta_formula, 1e-14,
                         "relative mismatch"));
  const double lhs = std::exp(alpha * t0 * static_cast<double>(N));
  const double rhs = std::expm1(alpha * t0) / (4.0 * eta * b0);
  out.push_back(check_ge("witness e^{alpha t0 N} >= (e^{alpha t0}-1)/(4 eta b0)", lhs, rhs * (1.0 - 1e-12)));
  out.push_back(check_le("witness epsilon below ceiling", epsilon, std::expm1(alpha * t0) / (16.0 * b0)));
  return out;
}

std::pair<double, double> default_witness_band(const SymbolParams& p) {
  const double xs = spectral_profile(p).xi_star;
  return {xs, 1.25 * xs};
}

namespace {

// Unit-norm real band datum in DFT coefficients, Nyquist slot cleared.
std::vector<cplx> unit_band_spectrum(double c, double d, const SpatialGrid& grid) {
  Field w = build_w0_real(c, d, grid);
  const double norm = l2_norm(w);
  for (double& v : w.values) v /= norm;
  Spectrum s = to_spectrum(w);
  s.coeffs[grid.n / 2] = cplx{};
  return s.coeffs;
}

double coeff_l2(std::span<const cplx> c, double dx) {
  double s = 0.0;
  for (const cplx& z : c) s += std::norm(z);
  return std::sqrt(dx / static_cast<double>(c.size()) * s);
}

struct BandRun {
  std::vector<double> norm;    // ||v(k t0)||
  std::vector<double> linear;  // ||S(k t0) v0||
  std::vector<double> dev;     // ||v(k t0) - S(k t0) v0||
  bool diverged = false;
};

// Spectral run sampled at t0, 2 t0, .., N t0.
BandRun run_band(std::span<const cplx> v0, double t0, std::size_t N, double dt, const SpatialGrid& grid,
                 const SymbolParams& p) {
  const DuhamelStepper stepper(grid, p);
  std::vector<cplx> v(v0.begin(), v0.end()), lin(v.size()), diff(v.size());
  const StepPlan plan = plan_steps(t0, dt);
  BandRun out;
  for (std::size_t m = 1; m <= N; ++m) {
    for (std::size_t k = 0; k < plan.steps; ++k) {
      if (!stepper.step(v, plan.dt)) {
        out.diverged = true;
        return out;
      }
    }
    const std::vector<cplx> e = stepper.propagator(static_cast<double>(m) * t0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      lin[k] = e[k] * v0[k];
      diff[k] = v[k] - lin[k];
    }
    out.norm.push_back(coeff_l2(v, grid.dx));
    out.linear.push_back(coeff_l2(lin, grid.dx));
    out.dev.push_back(coeff_l2(diff, grid.dx));
  }
  return out;
}

}  // namespace

double fit_b0(double t0, double c, double d, const SpatialGrid& grid, const SymbolParams& p, double dt) {
  const std::vector<cplx> unit = unit_band_spectrum(c, d, grid);
  double b0 = 0.0;
  for (double a : kB0Amplitudes) {
    std::vector<cplx> v0(unit);
    for (cplx& z : v0) z *= a;
    const BandRun r = run_band(v0, t0, 1, dt, grid, p);
    if (r.diverged) throw std::runtime_error("fit_b0: spectral run diverged");
    b0 = std::max(b0, r.dev[0] / (a * a));
  }
  return b0;
}

InstabilityWitness make_witness(double t0, double c, double d, std::size_t N, const SpatialGrid& grid,
                                const SymbolParams& p) {
  if (!(t0 > 0.0) || N == 0) throw std::invalid_argument("make_witness: need t0 > 0 and N >= 1");
  const BandRate br = band_rate(c, d, p);
  if (!br.conditions_hold()) {
    std::ostringstream os;
    os << "make_witness: band [" << c << ", " << d << "] violates Re phi(c) < Re phi(d) = max (Re phi(c)="
       << br.re_phi_c << ", Re phi(d)=" << br.re_phi_d << ")";
    throw std::invalid_argument(os.str());
  }
  InstabilityWitness w;
  w.t0 = t0;
  w.c = c;
  w.d = d;
  w.N = N;
  w.alpha = spectral_profile(p).alpha;
  w.beta = br.beta;
  w.gamma = w.alpha - w.beta;
  w.b0 = fit_b0(t0, c, d, grid, p);
  w.delta = std::exp(-w.alpha * static_cast<double>(N) * t0) * std::expm1(w.alpha * t0) / (4.0 * w.b0);
  w.epsilon = std::expm1(w.alpha * t0) / (32.0 * w.b0);
  w.eta = w.delta;
  return w;
}

RunReport verify_witness(const InstabilityWitness& w, const SpatialGrid& grid, const SymbolParams& p,
                         double amplitude_scale, double tolerance) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.title = "instability witness";
  {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "t0=" << w.t0 << " band=" << w.c << ',' << w.d << " N=" << w.N << " alpha=" << w.alpha
       << " beta=" << w.beta << " gamma=" << w.gamma << " b0=" << w.b0 << " delta=" << w.delta
       << " epsilon=" << w.epsilon << " eta=" << w.eta << " amplitude_scale=" << amplitude_scale
       << " grid_n=" << grid.n << " length=" << grid.length();
    rep.config.push_back(os.str());
  }
  rep.checks = w.consistency();

  const double v0_norm = amplitude_scale * w.delta;
  std::vector<cplx> v0 = unit_band_spectrum(w.c, w.d, grid);
  for (cplx& z : v0) z *= v0_norm;
  const BandRun r = run_band(v0, w.t0, w.N, kDefaultWitnessDt, grid, p);
  if (r.diverged) {
    rep.checks.push_back({"nonlinear run", 0.0, 0.0, "finite", false, "spectral run diverged"});
    return rep;
  }
  for (std::size_t m = 1; m <= w.N; ++m) {
    const double t = static_cast<double>(m) * w.t0;
    const std::string at = "n=" + std::to_string(m);
    rep.checks.push_back(check_ge("(i) ||S(n t0) v0|| >= delta e^{beta n t0}", r.linear[m - 1],
                                  v0_norm * std::exp(w.beta * t) * (1.0 - 1e-10), at));
    rep.checks.push_back(check_le("(ii) ||v(n t0) - S(n t0) v0|| <= (delta/4) e^{alpha n t0}", r.dev[m - 1],
                                  0.25 * v0_norm * std::exp(w.alpha * t) * (1.0 + tolerance), at));
    rep.l2.push_back({t, r.norm[m - 1]});
  }
  const double T = static_cast<double>(w.N) * w.t0;
  const double floor = v0_norm * std::exp(w.beta * T) - 0.25 * v0_norm * std::exp(w.alpha * T);
  rep.checks.push_back(check_ge("(iii) ||v(N t0)|| >= delta e^{beta N t0} - (delta/4) e^{alpha N t0}", r.norm.back(),
                                floor));
  rep.checks.push_back(check_ge("(iii) separation floor > epsilon", floor, w.epsilon));
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

double fit_slope(std::span<const L2Sample> series, double t_from, double t_to) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const L2Sample& s : series) {
    if (s.t < t_from || s.t > t_to || !(s.l2 > 0.0)) continue;
    const double y = std::log(s.l2);
    n += 1;
    sx += s.t;
    sy += y;
    sxx += s.t * s.t;
    sxy += s.t * y;
  }
  if (n < 2) throw std::invalid_argument("fit_slope: fewer than two samples in the window");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

// A run that starts flat stays flat: report slope 0 and growth 1 instead of
// fitting log 0.
bool identically_zero(std::span<const L2Sample> series) {
  return std::all_of(series.begin(), series.end(), [](const L2Sample& s) { return s.l2 == 0.0; });
}

double slope_or_flat(std::span<const L2Sample> series, double t_from, double t_to) {
  return identically_zero(series) ? 0.0 : fit_slope(series, t_from, t_to);
}

double growth_or_flat(const Trajectory& tr) {
  return identically_zero(tr.l2_series) ? 1.0 : tr.final_l2() / tr.l2_series.front().l2;
}

}  // namespace

double relative_state_distance(const Field& a, const Field& reference, double u_phi) {
  Field pert = reference;
  for (double& v : pert.values) v -= u_phi;
  return l2_distance(a, reference) / l2_norm(pert);
}

DemoResult instability_demo(const SimConfig& cfg, bool refine) {
  cfg.validate();
  if (!std::holds_alternative<initial::Bump>(cfg.initial)) {
    throw std::invalid_argument("instability_demo: needs a bump initial datum");
  }
  const double alpha = spectral_profile(cfg.params).alpha;
  const double T = cfg.t_end;

  auto timed_fd = [](SimConfig c) {
    const auto s = std::chrono::steady_clock::now();
    Trajectory tr = run_fd(c);
    return std::pair{std::move(tr), std::chrono::duration<double>(std::chrono::steady_clock::now() - s).count()};
  };
  SimConfig fine = cfg;
  fine.grid = SpatialGrid::with_length(2 * cfg.grid.n, cfg.grid.length(), cfg.grid.origin);
  fine.dt.reset();

  const auto start = std::chrono::steady_clock::now();
  auto fd_f = std::async(std::launch::async, timed_fd, cfg);
  auto sp_f = std::async(std::launch::async, [&] { return run_mild(cfg); });
  std::optional<std::future<std::pair<Trajectory, double>>> fine_f;
  if (refine) fine_f = std::async(std::launch::async, timed_fd, fine);

  DemoResult out;
  auto [fd, fd_seconds] = fd_f.get();
  out.fd = std::move(fd);
  out.spectral = sp_f.get();
  double fine_seconds = 0.0;
  if (fine_f) {
    auto [tr, secs] = fine_f->get();
    out.fd_refined = std::move(tr);
    fine_seconds = secs;
  }

  RunReport& rep = out.report;
  rep.title = "instability demo";
  {
    const auto& b = std::get<initial::Bump>(cfg.initial);
    std::ostringstream os;
    os << std::setprecision(10) << "n=" << cfg.grid.n << " length=" << cfg.grid.length() << " t_end=" << T
       << " bump.center=" << b.center << " bump.width=" << b.width << " bump.amplitude=" << b.amplitude
       << " u_phi=" << cfg.params.u_phi << " fd.dt=" << out.fd.dt << " spectral.dt=" << out.spectral.dt
       << " alpha=" << alpha;
    rep.config.push_back(os.str());
  }
  rep.l2 = out.fd.l2_series;

  const double fd_slope = slope_or_flat(out.fd.l2_series, 0.5 * T, T);
  const double fd_growth = growth_or_flat(out.fd);
  const double sp_slope = slope_or_flat(out.spectral.l2_series, 0.5 * T, T);
  const double sp_growth = growth_or_flat(out.spectral);
  rep.fitted_rate = fd_slope;
  rep.growth_factor = fd_growth;

  rep.checks.push_back(check_ge("fd growth factor ||v(T)||/||v(0)||", fd_growth, 10.0));
  rep.checks.push_back({"fd slope > 0", fd_slope, 0.0, ">", fd_slope > 0.0, ""});
  rep.checks.push_back(check_le("fd slope <= 1.05 alpha", fd_slope, 1.05 * alpha));
  rep.checks.push_back(check_le("fd runtime seconds", fd_seconds, 60.0));
  if (out.fd_refined) {
    const double fine_slope = slope_or_flat(out.fd_refined->l2_series, 0.5 * T, T);
    std::ostringstream os;
    os << std::setprecision(6) << "slope n=" << cfg.grid.n << ": " << fd_slope << ", n=" << fine.grid.n << ": "
       << fine_slope;
    rep.checks.push_back(check_le("fd slope change under refinement", fd_slope == 0.0 ? std::abs(fine_slope) : std::abs(fine_slope / fd_slope - 1.0), 0.02,
                                  os.str()));
    rep.checks.push_back(check_le("fd refined runtime seconds", fine_seconds, 60.0));
  }
  {
    std::ostringstream os;
    os << std::setprecision(6) << "growth factor " << sp_growth;
    rep.checks.push_back(check_le("spectral slope <= 1.05 alpha", sp_slope, 1.05 * alpha, os.str()));
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace fowler

#include "fowler/acceptance.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "fowler/kernel.hpp"
#include "fowler/nonlocal_op.hpp"
#include "fowler/solver_fd.hpp"
#include "fowler/solver_spectral.hpp"

namespace fowler {

bool Criterion::pass() const {
  if (!error.empty() || checks.empty()) return false;
  for (const Check& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

Field random_field(const SpatialGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(g.n);
  for (double& x : v) x = normal(rng);
  return Field(g, std::move(v));
}

}  // namespace

Criterion criterion_constants() {
  Criterion c{"constants", {}, {}};
  const ConstantRoutes r = constant_routes();
  const SymbolParams p = derive_constants();
  c.checks.push_back(check_le("closed form vs quadrature, relative gap", r.max_relative_gap(), kConstantRouteTolerance,
                              "a=" + fmt(r.a_closed) + " b=" + fmt(r.b_closed)));
  c.checks.push_back(check_le("|b/a - sqrt(3)|", std::abs(p.b_I / p.a_I - std::numbers::sqrt3), 1e-9));
  c.checks.push_back({"C_I == 4/9", p.C_I, 4.0 / 9.0, "==", p.C_I == 4.0 / 9.0, ""});
  return c;
}

Criterion criterion_spectral_profile() {
  Criterion c{"spectral profile", {}, {}};
  const SymbolParams p = derive_constants();
  const SpectralProfile closed = spectral_profile(p);
  const SpectralProfile grid = spectral_profile_by_grid(p);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  c.checks.push_back(check_le("alpha closed vs grid", rel(grid.alpha, closed.alpha), 1e-6, "alpha=" + fmt(closed.alpha)));
  c.checks.push_back(check_le("xi* closed vs grid", rel(grid.xi_star, closed.xi_star), 1e-6));
  c.checks.push_back(check_le("xi_c closed vs grid", rel(grid.xi_c, closed.xi_c), 1e-6));
  // Sign structure on (0, 3 xi_c), skipping the two sampled zeros.
  std::size_t wrong = 0;
  constexpr std::size_t samples = 100'000;
  for (std::size_t i = 1; i < samples; ++i) {
    const double xi = 3.0 * closed.xi_c * static_cast<double>(i) / samples;
    if (std::abs(xi - closed.xi_c) < 1e-12 * closed.xi_c) continue;
    const double re = psi_I(xi, p).real();
    if ((xi < closed.xi_c) != (re < 0.0)) ++wrong;
  }
  c.checks.push_back(check_le("samples with Re psi < 0 outside (0, xi_c) or >= 0 inside", static_cast<double>(wrong), 0.0));
  return c;
}

Criterion criterion_operator_agreement() {
  Criterion c{"operator agreement", {}, {}};
  for (const OperatorCheckRow& r : operator_check(1024, 20.0)) {
    if (r.test == "gaussian_singular_vs_spectral") {
      c.checks.push_back(check_le("gaussian singular vs spectral, relative L2", r.value, r.tolerance));
    } else if (r.test == "refinement_quadrature_vs_spectral" && r.metric == "fitted_order") {
      c.checks.push_back({"quadrature vs spectral, fitted order (decreasing errors)", r.value, r.tolerance, ">=", r.pass,
                          "grids 64..1024"});
    }
  }
  return c;
}

Criterion criterion_causal_oracle() {
  Criterion c{"causal oracle", {}, {}};
  for (const OperatorCheckRow& r : operator_check(1024, 20.0)) {
    if (r.test == "causal_x_plus_squared") {
      c.checks.push_back(check_le("quadrature on x_+^2 vs 3 x^{2/3}, max relative on [X/4, 3X/4]", r.value, r.tolerance,
                                  "dx = X/4096"));
    }
  }
  return c;
}

Criterion criterion_kernel() {
  Criterion c{"kernel", {}, {}};
  const SymbolParams p = derive_constants();
  const SpatialGrid g = kernel_grid();
  double worst_mass = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0}) worst_mass = std::max(worst_mass, std::abs(kernel_snapshot(t, g, p).mass() - 1.0));
  c.checks.push_back(check_le("|mass - 1| over t in {0.1,0.5,1,2}", worst_mass, 1e-8));
  for (double t : {0.1, 0.5}) {
    const KernelSnapshot k = kernel_snapshot(t, g, p);
    c.checks.push_back({"min K(" + fmt(t) + ")", k.min(), 0.0, "<", k.min() < 0.0, "edge/peak " + fmt(k.edge_magnitude())});
  }

  std::mt19937_64 rng(kAcceptanceSeed);
  const Field w = random_field(g, rng);
  const Field a = apply_semigroup(0.7, w, p);
  const Field b = apply_semigroup(0.3, apply_semigroup(0.4, w, p), p);
  c.checks.push_back(check_le("||S(t+s)w - S(t)S(s)w|| / ||w||", l2_distance(a, b) / l2_norm(w), 1e-10));

  // The Plancherel sum converges only algebraically in L; L = 80 is the
  // shortest window where doubling moves ||d_x K|| by less than 1e-6.
  const SpatialGrid lg = kernel_grid(2048, 80.0), lg2 = kernel_grid(4096, 160.0);
  double worst_len = 0.0;
  for (double t : {0.05, 0.5, 1.0, 2.0}) worst_len = std::max(worst_len, std::abs(dxk_norm(t, lg2, p) / dxk_norm(t, lg, p) - 1.0));
  c.checks.push_back(check_le("||d_x K|| change under length doubling", worst_len, 1e-6, "L = 80 -> 160"));

  const EnvelopeFit coarse = fit_envelope_constant(time_grid(0.05, 2.0, 40), lg, p);
  const EnvelopeFit fine = fit_envelope_constant(time_grid(0.05, 2.0, 79), lg, p);
  const double drift = std::abs(fine.C / coarse.C - 1.0);
  c.checks.push_back(check_le("envelope constant drift under t-grid refinement", drift, 1e-2,
                              "C=" + fmt(coarse.C) + " vs " + fmt(fine.C)));
  c.checks.push_back({"envelope constant finite and positive", coarse.C, 0.0, ">",
                      std::isfinite(coarse.C) && coarse.C > 0.0, ""});
  return c;
}

Criterion criterion_linear_growth(std::uint64_t seed) {
  Criterion c{"linear growth laws", {}, {}};
  const SymbolParams p = derive_constants();
  const double alpha = spectral_profile(p).alpha;
  const SpatialGrid g = kernel_grid();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Field w = random_field(g, rng);
    const double nw = l2_norm(w);
    for (double t : {0.1, 0.5, 1.0}) worst = std::max(worst, l2_norm(apply_semigroup(t, w, p)) / (std::exp(alpha * t) * nw));
  }
  c.checks.push_back(check_le("max ||S(t)w|| / (e^{alpha t} ||w||), 100 random fields", worst, 1.0 + 1e-12,
                              "seed " + std::to_string(seed)));

  const auto [lo, hi] = default_witness_band(p);
  const double beta = band_rate(lo, hi, p).beta;
  const ComplexField w0 = build_w0(lo, hi, witness_grid());
  const double n0 = l2_norm(w0);
  double least = INFINITY;
  for (double t : {0.5, 1.0, 2.0, 3.0}) least = std::min(least, l2_norm(apply_semigroup(t, w0, p)) / (std::exp(beta * t) * n0));
  c.checks.push_back(check_ge("min ||S(t)w0|| / (e^{beta t} ||w0||)", least, 1.0 - 1e-10, "band [xi*, 1.25 xi*]"));
  return c;
}

Criterion criterion_nonlinear_envelope() {
  Criterion c{"nonlinear envelope", {}, {}};
  const SymbolParams p = derive_constants();
  const double alpha = spectral_profile(p).alpha;
  auto envelope = [&](const Trajectory& tr) {
    double worst = 0.0;
    const double n0 = tr.l2_series.front().l2;
    for (const L2Sample& s : tr.l2_series) worst = std::max(worst, s.l2 / (std::exp(alpha * s.t) * n0));
    return worst;
  };

  SimConfig bump = default_instability_config();
  bump.scheme = Scheme::spectral;
  bump.t_end = 5.0;
  c.checks.push_back(check_le("bump: max ||v(t)|| / (e^{alpha t} ||v0||), t <= 5", envelope(run_mild(bump)), 1.01));

  const auto [lo, hi] = default_witness_band(p);
  SimConfig band;
  band.grid = witness_grid();
  band.params = p;
  band.scheme = Scheme::spectral;
  band.t_end = 5.0;
  band.initial = initial::W0Band{lo, hi, 0.5};
  c.checks.push_back(check_le("band: max ||v(t)|| / (e^{alpha t} ||v0||), t <= 5", envelope(run_mild(band)), 1.01));

  // D(t0) under amplitude halving.
  band.t_end = 1.0;
  std::vector<double> dev;
  for (double a : {0.5, 0.25, 0.125}) {
    band.initial = initial::W0Band{lo, hi, a};
    dev.push_back(run_mild(band).deviation.back().d);
  }
  for (std::size_t i = 0; i + 1 < dev.size(); ++i) {
    const double ratio = dev[i] / dev[i + 1];
    c.checks.push_back(check_le("|D(1; a)/D(1; a/2) - 4|", std::abs(ratio - 4.0), 0.8, "ratio " + fmt(ratio)));
  }
  return c;
}

Criterion criterion_witness() {
  Criterion c{"instability witness", {}, {}};
  const SymbolParams p = derive_constants();
  const auto [lo, hi] = default_witness_band(p);
  const SpatialGrid g = witness_grid();
  const InstabilityWitness w = make_witness(1.0, lo, hi, 3, g, p);
  c.checks = verify_witness(w, g, p).checks;
  return c;
}

Criterion criterion_bump_growth() {
  Criterion c{"bump growth", {}, {}};
  const DemoResult demo = instability_demo(default_instability_config(1024), true);
  for (const Check& k : demo.report.checks) {
    if (k.name.rfind("fd ", 0) == 0) c.checks.push_back(k);
  }
  return c;
}

Criterion criterion_cross_scheme() {
  Criterion c{"cross-scheme", {}, {}};
  auto distance = [](std::size_t n) {
    SimConfig cfg = default_instability_config(n);
    cfg.t_end = 1.0;
    auto fd = std::async(std::launch::async, [cfg] { return run_fd(cfg); });
    const Trajectory sp = run_mild(cfg);
    return relative_state_distance(fd.get().final_state(), sp.final_state(), cfg.params.u_phi);
  };
  const double coarse = distance(1024);
  const double fine = distance(2048);
  c.checks.push_back(check_le("FD vs spectral at t=1, relative L2, n=1024", coarse, 0.05));
  c.checks.push_back(check_le("FD vs spectral at t=1, relative L2, n=2048 vs n=1024", fine, coarse));
  return c;
}

std::vector<Criterion> run_acceptance() {
  const std::vector<std::function<Criterion()>> all = {
      criterion_constants,       criterion_spectral_profile, criterion_operator_agreement,
      criterion_causal_oracle,   criterion_kernel,           [] { return criterion_linear_growth(); },
      criterion_nonlinear_envelope, criterion_witness,       criterion_bump_growth,
      criterion_cross_scheme,
  };
  const std::vector<std::string> names = {"constants",          "spectral profile", "operator agreement",
                                          "causal oracle",      "kernel",           "linear growth laws",
                                          "nonlinear envelope", "instability witness",  "bump growth",
                                          "cross-scheme"};
  // Warm the constant cache before fanning out.
  (void)derive_constants();
  std::vector<std::future<Criterion>> jobs;
  for (const auto& f : all) jobs.push_back(std::async(std::launch::async, f));
  std::vector<Criterion> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      out.push_back(jobs[i].get());
    } catch (const std::exception& e) {
      out.push_back({names[i], {}, e.what()});
    }
  }
  return out;
}

void write_acceptance(std::ostream& os, const std::vector<Criterion>& results) {
  os << std::setprecision(6);
  for (const Criterion& c : results) {
    os << (c.pass() ? "PASS" : "FAIL") << "  " << c.name << ':';
    if (!c.error.empty()) os << " error: " << c.error;
    for (std::size_t i = 0; i < c.checks.size(); ++i) {
      const Check& k = c.checks[i];
      os << (i ? ";" : "") << ' ' << k.name << ' ' << k.value << ' ' << k.relation << ' ' << k.bound;
      if (!k.pass) os << " [fail]";
    }
    os << '\n';
  }
}

void write_acceptance_detail(std::ostream& os, const std::vector<Criterion>& results) {
  os << std::setprecision(10);
  for (const Criterion& c : results) {
    os << (c.pass() ? "PASS" : "FAIL") << "  " << c.name << '\n';
    if (!c.error.empty()) os << "    error: " << c.error << '\n';
    for (const Check& k : c.checks) {
      os << "    " << (k.pass ? "ok   " : "FAIL ") << k.name << ": " << k.value << ' ' << k.relation << ' ' << k.bound;
      if (!k.detail.empty()) os << "  (" << k.detail << ')';
      os << '\n';
    }
  }
}

}  // namespace fowler

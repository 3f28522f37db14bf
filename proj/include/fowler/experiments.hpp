#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fowler/config.hpp"
#include "fowler/grid.hpp"
#include "fowler/symbol.hpp"
#include "fowler/trajectory.hpp"

namespace fowler {

/// Band datum with Fourier transform 1_[c,d] / sqrt(d - c), one-sided and
/// therefore complex. Phases are referenced to x = 0, so the peak sits at
/// x = 0 when the grid covers it.
ComplexField build_w0(double c, double d, const SpatialGrid& grid);

/// sqrt(2) Re w0: real, symmetrised two-sided spectrum, same L2 norm as w0.
Field build_w0_real(double c, double d, const SpatialGrid& grid);

/// Continuous w0 under the transform convention used throughout:
/// e^{i pi (c+d) x} sin(pi (d-c) x) / (pi x sqrt(d-c)), and sqrt(d-c) at x = 0.
cplx w0_formula(double x, double c, double d);

/// Centred grid used by the witness runs: L = 1024, n = 4096.
SpatialGrid witness_grid(std::size_t n = 4096, double length = 1024.0);

/// One named numeric comparison.
struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // how value is compared with bound, e.g. "<=", ">="
  bool pass = false;
  std::string detail;
};

Check check_le(std::string name, double value, double bound, std::string detail = {});
Check check_ge(std::string name, double value, double bound, std::string detail = {});

struct RunReport {
  std::string title;
  std::vector<std::string> config;  // key=value echo
  std::vector<Check> checks;
  std::vector<L2Sample> l2;
  std::optional<double> fitted_rate;
  std::optional<double> growth_factor;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;

  bool all_pass() const;
};

/// Human-readable report; wall time is printed on its own line so that the
/// rest is reproducible.
void write_report(std::ostream& os, const RunReport& r);

struct InstabilityWitness {
  double t0 = 1.0;
  double c = 0.0;
  double d = 0.0;
  std::size_t N = 3;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double b0 = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;

  /// Algebraic relations between the constants, checked before any run.
  std::vector<Check> consistency() const;
};

/// Default witness band [xi*, 1.25 xi*].
std::pair<double, double> default_witness_band(const SymbolParams& p);

inline constexpr double kDefaultWitnessDt = 1e-2;

/// Amplitudes used to fit b0.
inline constexpr double kB0Amplitudes[] = {0.5, 0.25, 0.125, 0.0625};

/// b0 = sup over the amplitude sweep of D(t0) / ||v0||^2 for v0 = a sqrt(2) Re w0.
double fit_b0(double t0, double c, double d, const SpatialGrid& grid, const SymbolParams& p,
              double dt = kDefaultWitnessDt);

/// beta from band_rate, gamma = alpha - beta, b0 fitted, delta and epsilon
/// from the proof's formulas, eta = delta.
InstabilityWitness make_witness(double t0, double c, double d, std::size_t N, const SpatialGrid& grid,
                                const SymbolParams& p);

/// Runs the spectral solver from v0 = amplitude_scale * delta * w, where w is
/// sqrt(2) Re w0 scaled to unit norm on the grid, and checks the linear lower bound, the telescoping deviation bound and
/// the final separation.
RunReport verify_witness(const InstabilityWitness& w, const SpatialGrid& grid, const SymbolParams& p,
                         double amplitude_scale = 1.0, double tolerance = 1e-2);

/// Least-squares slope of log l2 against t over [t_from, t_to].
double fit_slope(std::span<const L2Sample> series, double t_from, double t_to);

struct DemoResult {
  Trajectory fd;
  Trajectory spectral;
  std::optional<Trajectory> fd_refined;
  RunReport report;
};

/// Runs both schemes from the bump datum concurrently, and the FD scheme once
/// more on the doubled grid when refine is set. Fits the slope of log ||v||
/// over [T/2, T] and reports the growth factor ||v(T)|| / ||v(0)||.
DemoResult instability_demo(const SimConfig& cfg, bool refine = true);

/// Relative L2 distance between the perturbations of two same-grid states.
double relative_state_distance(const Field& a, const Field& reference, double u_phi);

}  // namespace fowler

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fowler/grid.hpp"
#include "fowler/symbol.hpp"

namespace fowler {

/// Thrown when exp(-t Re phi) at the grid Nyquist frequency is not below
/// 1e-12 of the symbol's peak exp(alpha t).
class ResolutionError : public std::runtime_error {
 public:
  ResolutionError(const std::string& what, double required_nyquist)
      : std::runtime_error(what), required_nyquist_(required_nyquist) {}
  double required_nyquist() const { return required_nyquist_; }

 private:
  double required_nyquist_;
};

inline constexpr double kResolutionRatio = 1e-12;

/// Smallest frequency above which exp(-t Re phi) <= 1e-12 exp(alpha t).
double required_nyquist(double t, const SymbolParams& p);

/// Throws ResolutionError if the grid is too coarse for time t.
void check_resolution(const SpatialGrid& grid, double t, const SymbolParams& p);

/// Samples of K(t, .) = F^{-1}[exp(-t phi)] on a periodic grid used as a proxy
/// for the real line.
struct KernelSnapshot {
  double t = 0.0;
  SpatialGrid grid;
  std::vector<double> values;
  SymbolParams params;

  double mass() const;
  double min() const;
  /// Largest |K| over the outer 5% of the window on each side, relative to max |K|.
  double edge_magnitude() const;
};

/// Grid centred on x = 0 (origin -L/2) with the default kernel resolution.
SpatialGrid kernel_grid(std::size_t n = 1024, double length = 40.0);

KernelSnapshot kernel_snapshot(double t, const SpatialGrid& grid, const SymbolParams& p);

/// S(t)w by spectral multiplication with exp(-t phi). Real fields must be periodic.
Field apply_semigroup(double t, const Field& w, const SymbolParams& p);
ComplexField apply_semigroup(double t, const ComplexField& w, const SymbolParams& p);

/// ||d/dx K(t, .)||_{L2} via Plancherel on the grid's frequency lattice.
double dxk_norm(double t, const SpatialGrid& grid, const SymbolParams& p);

/// Minimal C with dxk_norm(t) <= C (t^{-3/4} + e^{alpha t}) over the sampled times.
struct EnvelopeFit {
  double C = 0.0;
  std::vector<double> times;
  std::vector<double> ratios;
};

EnvelopeFit fit_envelope_constant(std::span<const double> times, const SpatialGrid& grid, const SymbolParams& p);

/// Times t_0 + k h, k = 0 .. count-1.
std::vector<double> time_grid(double t0, double t1, std::size_t count);

}  // namespace fowler

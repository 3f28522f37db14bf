#include "fowler/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fowler/fft.hpp"

namespace fowler {

double required_nyquist(double t, const SymbolParams& p) {
  if (!(t > 0.0)) throw std::invalid_argument("required_nyquist: t must be positive");
  const SpectralProfile prof = spectral_profile(p);
  const double target = -std::log(kResolutionRatio) / t - prof.alpha;
  if (target <= 0.0) return prof.xi_c;
  // Re phi is increasing beyond xi_c; bracket then bisect.
  double lo = prof.xi_c, hi = 2.0 * prof.xi_c;
  while (re_phi_I(hi, p) < target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (re_phi_I(mid, p) < target ? lo : hi) = mid;
  }
  return hi;
}

void check_resolution(const SpatialGrid& grid, double t, const SymbolParams& p) {
  grid.validate();
  const double need = required_nyquist(t, p);
  if (grid.nyquist() < need) {
    std::ostringstream os;
    os << "kernel grid too coarse for t=" << t << ": Nyquist frequency " << grid.nyquist()
       << " is below the required " << need << " (use dx <= " << 0.5 / need << ")";
    throw ResolutionError(os.str(), need);
  }
}

double KernelSnapshot::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.dx;
}

double KernelSnapshot::min() const { return *std::min_element(values.begin(), values.end()); }

double KernelSnapshot::edge_magnitude() const {
  const std::size_t n = values.size();
  const std::size_t band = std::max<std::size_t>(1, n / 20);
  double peak = 0.0, edge = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::abs(values[j]);
    peak = std::max(peak, a);
    if (j < band || j >= n - band) edge = std::max(edge, a);
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

SpatialGrid kernel_grid(std::size_t n, double length) { return SpatialGrid::with_length(n, length, -0.5 * length); }

KernelSnapshot kernel_snapshot(double t, const SpatialGrid& grid, const SymbolParams& p) {
  check_resolution(grid, t, p);
  const std::size_t n = grid.n;
  std::vector<cplx> spec(n), out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = grid.frequency(k);
    spec[k] = std::exp(-t * phi_I(xi, p)) * std::polar(1.0, 2.0 * std::numbers::pi * xi * grid.origin);
  }
  if (n % 2 == 0) spec[n / 2] = cplx{spec[n / 2].real(), 0.0};
  fft_for(n).inverse(spec, out);

  const double scale = 1.0 / grid.length();
  double max_re = 0.0, max_im = 0.0;
  KernelSnapshot snap{t, grid, std::vector<double>(n), p};
  for (std::size_t j = 0; j < n; ++j) {
    snap.values[j] = out[j].real() * scale;
    max_re = std::max(max_re, std::abs(snap.values[j]));
    max_im = std::max(max_im, std::abs(out[j].imag() * scale));
  }
  if (max_im > 1e-8 * max_re) throw std::runtime_error("kernel_snapshot: imaginary residue above 1e-8");
  return snap;
}

Field apply_semigroup(double t, const Field& w, const SymbolParams& p) {
  w.validate();
  if (w.boundary.kind != BoundaryKind::periodic) throw std::invalid_argument("apply_semigroup: needs a periodic field");
  Spectrum s = to_spectrum(w);
  apply_multiplier(s, [&](double xi) { return std::exp(-t * phi_I(xi, p)); });
  double l1 = 0.0;
  for (const cplx& c : s.coeffs) l1 += std::abs(c);
  return to_field(s, 1e-8, l1 / static_cast<double>(s.coeffs.size()));
}

ComplexField apply_semigroup(double t, const ComplexField& w, const SymbolParams& p) {
  Spectrum s = to_spectrum(w);
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) s.coeffs[k] *= std::exp(-t * phi_I(s.frequency(k), p));
  return to_complex_field(s);
}

double dxk_norm(double t, const SpatialGrid& grid, const SymbolParams& p) {
  check_resolution(grid, t, p);
  double s = 0.0;
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double xi = grid.frequency(k);
    const double w = 2.0 * std::numbers::pi * xi;
    s += w * w * std::exp(-2.0 * t * re_phi_I(xi, p));
  }
  return std::sqrt(s / grid.length());
}

EnvelopeFit fit_envelope_constant(std::span<const double> times, const SpatialGrid& grid, const SymbolParams& p) {
  const double alpha = spectral_profile(p).alpha;
  EnvelopeFit fit;
  for (double t : times) {
    const double r = dxk_norm(t, grid, p) / (std::pow(t, -0.75) + std::exp(alpha * t));
    fit.times.push_back(t);
    fit.ratios.push_back(r);
    fit.C = std::max(fit.C, r);
  }
  return fit;
}

std::vector<double> time_grid(double t0, double t1, std::size_t count) {
  if (count < 2) return {t0};
  std::vector<double> ts(count);
  for (std::size_t k = 0; k < count; ++k) ts[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(count - 1);
  return ts;
}

}  // namespace fowler

#include "fowler/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fowler {

namespace {

constexpr double kPi = std::numbers::pi;

// J(1) = int_0^inf t^{-1/3} exp(-2 pi i t) dt.
//
// [0, 1] is mapped by t = s^3, which turns the weight into the smooth 3 s.
// [1, K] is integrated one period at a time, and the remaining tail is
// closed with the integration-by-parts series
//   int_K^inf f e^{-i w t} dt = e^{-i w K} sum_m f^{(m)}(K) / (i w)^{m+1}.
cplx one_sided_transform_at_unit_frequency() {
  using boost::math::quadrature::gauss_kronrod;
  constexpr double w = 2.0 * kPi;

  auto head_re = [](double s) { return 3.0 * s * std::cos(w * s * s * s); };
  auto head_im = [](double s) { return -3.0 * s * std::sin(w * s * s * s); };
  double re = gauss_kronrod<double, 61>::integrate(head_re, 0.0, 1.0, 15, 1e-15);
  double im = gauss_kronrod<double, 61>::integrate(head_im, 0.0, 1.0, 15, 1e-15);

  constexpr int kPeriods = 400;
  auto body_re = [](double t) { return std::pow(t, -1.0 / 3.0) * std::cos(w * t); };
  auto body_im = [](double t) { return -std::pow(t, -1.0 / 3.0) * std::sin(w * t); };
  for (int k = 1; k < 1 + kPeriods; ++k) {
    re += gauss_kronrod<double, 31>::integrate(body_re, k, k + 1.0, 5, 1e-15);
    im += gauss_kronrod<double, 31>::integrate(body_im, k, k + 1.0, 5, 1e-15);
  }

  // Derivatives of t^{-1/3} at K; e^{-i w K} = 1 for integer K.
  const double K = 1.0 + kPeriods;
  cplx tail{0.0, 0.0};
  double coeff = 1.0;
  double expo = -1.0 / 3.0;
  cplx iw_pow{0.0, w};
  for (int m = 0; m < 6; ++m) {
    tail += coeff * std::pow(K, expo) / iw_pow;
    coeff *= expo;
    expo -= 1.0;
    iw_pow *= cplx{0.0, w};
  }
  return cplx{re, im} + tail;
}

}  // namespace

void SymbolParams::validate() const {
  if (!(a_I > 0.0) || !(b_I > 0.0)) throw std::invalid_argument("SymbolParams: a_I and b_I must be positive");
  if (C_I != 4.0 / 9.0) throw std::invalid_argument("SymbolParams: C_I must equal 4/9");
  if (!std::isfinite(u_phi)) throw std::invalid_argument("SymbolParams: u_phi must be finite");
}

double ConstantRoutes::max_relative_gap() const {
  return std::max(std::abs(a_closed - a_quadrature) / a_closed, std::abs(b_closed - b_quadrature) / b_closed);
}

ConstantRoutes constant_routes() {
  ConstantRoutes r;
  // sigma(xi) = (2 pi i xi)^2 * Gamma(2/3) (2 pi |xi|)^{-2/3} e^{-i pi/3 sgn xi}
  const double scale = std::pow(2.0 * kPi, 4.0 / 3.0) * std::tgamma(2.0 / 3.0);
  r.a_closed = scale * std::cos(kPi / 3.0);
  r.b_closed = scale * std::sin(kPi / 3.0);

  // sigma(1) = (2 pi i)^2 J(1) = -4 pi^2 J(1) = -a + i b
  const cplx sigma1 = -4.0 * kPi * kPi * one_sided_transform_at_unit_frequency();
  r.a_quadrature = -sigma1.real();
  r.b_quadrature = sigma1.imag();
  return r;
}

SymbolParams derive_constants(double u_phi) {
  static const ConstantRoutes routes = [] {
    ConstantRoutes r = constant_routes();
    if (r.max_relative_gap() > kConstantRouteTolerance) {
      throw std::runtime_error("derive_constants: closed form and quadrature disagree (gap " +
                               std::to_string(r.max_relative_gap()) + ")");
    }
    return r;
  }();
  SymbolParams p;
  p.a_I = routes.a_closed;
  p.b_I = routes.b_closed;
  p.C_I = 4.0 / 9.0;
  p.u_phi = u_phi;
  return p;
}

cplx sigma_I(double xi, const SymbolParams& p) {
  const double ax = std::abs(xi);
  const double cbrt = std::cbrt(ax);
  return {-p.a_I * ax * cbrt, p.b_I * xi * cbrt};
}

cplx psi_I(double xi, const SymbolParams& p) { return 4.0 * kPi * kPi * xi * xi + sigma_I(xi, p); }

cplx phi_I(double xi, const SymbolParams& p) { return psi_I(xi, p) + cplx{0.0, 2.0 * kPi * p.u_phi * xi}; }

double re_phi_I(double xi, const SymbolParams& p) {
  const double ax = std::abs(xi);
  return 4.0 * kPi * kPi * xi * xi - p.a_I * ax * std::cbrt(ax);
}

SpectralProfile spectral_profile(const SymbolParams& p) {
  const double pi2 = kPi * kPi;
  SpectralProfile s;
  s.alpha = p.a_I * p.a_I * p.a_I / (108.0 * pi2 * pi2);
  s.xi_star = std::pow(p.a_I / (6.0 * pi2), 1.5);
  s.xi_c = std::pow(p.a_I / (4.0 * pi2), 1.5);
  return s;
}

SpectralProfile spectral_profile_by_grid(const SymbolParams& p, std::size_t samples) {
  if (samples < 16) throw std::invalid_argument("spectral_profile_by_grid: too few samples");
  // The grid bound only has to bracket the band; a_I/(2 pi^2) exceeds xi_c.
  const double hi = 2.0 * std::pow(p.a_I / (2.0 * kPi * kPi), 1.5);
  const double h = hi / static_cast<double>(samples);

  std::size_t imin = 1;
  double vmin = re_phi_I(h, p);
  double xi_c = 0.0;
  double prev = vmin;
  for (std::size_t i = 2; i < samples; ++i) {
    const double xi = h * static_cast<double>(i);
    const double v = re_phi_I(xi, p);
    if (v < vmin) {
      vmin = v;
      imin = i;
    }
    if (xi_c == 0.0 && prev < 0.0 && v >= 0.0) {
      xi_c = xi - h * v / (v - prev);
    }
    prev = v;
  }

  // Parabola through the three samples around the discrete minimum.
  const double x0 = h * static_cast<double>(imin);
  const double fm = re_phi_I(x0 - h, p);
  const double f0 = re_phi_I(x0, p);
  const double fp = re_phi_I(x0 + h, p);
  const double denom = fm - 2.0 * f0 + fp;
  const double shift = denom > 0.0 ? 0.5 * h * (fm - fp) / denom : 0.0;

  SpectralProfile s;
  s.xi_star = x0 + shift;
  s.alpha = -(f0 - 0.125 * (fm - fp) * (fm - fp) / (denom > 0.0 ? denom : 1.0));
  s.xi_c = xi_c;
  return s;
}

BandRate band_rate(double c, double d, const SymbolParams& p, std::size_t samples) {
  if (!(c > 0.0) || !(d >= c)) throw std::invalid_argument("band_rate: need 0 < c <= d");
  if (samples < 2) samples = 2;
  double vmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const double xi = c + (d - c) * static_cast<double>(i) / static_cast<double>(samples - 1);
    vmax = std::max(vmax, re_phi_I(xi, p));
  }
  if (vmax >= 0.0) {
    throw std::invalid_argument("band_rate: [" + std::to_string(c) + ", " + std::to_string(d) +
                                "] is not inside the unstable band (max Re phi = " + std::to_string(vmax) + ")");
  }
  BandRate r;
  r.beta = -vmax;
  r.re_phi_c = re_phi_I(c, p);
  r.re_phi_d = re_phi_I(d, p);
  r.c_below_d = r.re_phi_c < r.re_phi_d;
  r.max_at_d = r.re_phi_d >= vmax;
  return r;
}

}  // namespace fowler

#include "fowler/nonlocal_op.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fowler/fft.hpp"
#include "fowler/simd/kernels.hpp"

namespace fowler {

namespace {

constexpr std::size_t kDirectPeriods = 64;

// DFT of a real periodic kernel, made exactly conjugate symmetric.
std::vector<cplx> circulant_multiplier(std::span<const double> kernel) {
  const std::size_t n = kernel.size();
  std::vector<cplx> in(kernel.begin(), kernel.end());
  std::vector<cplx> m(n);
  fft_for(n).forward(in, m);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const cplx avg = 0.5 * (m[k] + std::conj(m[n - k]));
    m[k] = avg;
    m[n - k] = std::conj(avg);
  }
  m[0] = cplx{m[0].real(), 0.0};
  if (n % 2 == 0) m[n / 2] = cplx{m[n / 2].real(), 0.0};
  return m;
}

void circulant_apply_fft(std::span<const cplx> multiplier, std::span<const double> u, std::span<double> out) {
  const std::size_t n = u.size();
  thread_local std::vector<cplx> a, b;
  a.assign(u.begin(), u.end());
  b.resize(n);
  const Fft& fft = fft_for(n);
  fft.forward(a, b);
  simd::active_kernels().complex_multiply(multiplier.data(), b.data(), n);
  fft.inverse(b, a);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = a[j].real() * inv_n;
}

void circulant_apply_direct(std::span<const double> kernel, std::span<const double> u, std::span<double> out) {
  const std::size_t n = u.size();
  // ext[t] = u[(t - (n - 1)) mod n] for t in [0, 2n - 1)
  thread_local std::vector<double> ext;
  ext.resize(2 * n - 1);
  for (std::size_t t = 0; t < 2 * n - 1; ++t) ext[t] = u[(t + 1) % n];
  simd::active_kernels().convolve(kernel.data(), n, ext.data() + (n - 1), out.data(), n);
}

// out[j] = sum_{m < n} h[m] x[j - m] where x[i] = 0 for i < 0.
void causal_apply(std::span<const double> h, std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  thread_local std::vector<double> buf;
  buf.assign(2 * n - 1, 0.0);
  std::copy(x.begin(), x.end(), buf.begin() + static_cast<std::ptrdiff_t>(n - 1));
  simd::active_kernels().convolve(h.data(), n, buf.data() + (n - 1), out.data(), n);
}

// A^s * expm1(s log1p(r / A)) = (A + r)^s - A^s without cancellation.
double power_difference(double A, double r, double s) { return std::pow(A, s) * std::expm1(s * std::log1p(r / A)); }

// G_r = sum_{q >= 0} [(1 + r + q n)^{-1/3} - (1 + q n)^{-1/3}]
double regularised_periodic_weight(std::size_t r, std::size_t n) {
  if (r == 0) return 0.0;
  const double rr = static_cast<double>(r);
  const double nn = static_cast<double>(n);
  double s = 0.0;
  for (std::size_t q = 0; q < kDirectPeriods; ++q) {
    s += power_difference(1.0 + static_cast<double>(q) * nn, rr, -1.0 / 3.0);
  }
  // Euler-Maclaurin remainder for f(q) from q = Q on.
  const double A = 1.0 + static_cast<double>(kDirectPeriods) * nn;
  const double integral = -1.5 / nn * power_difference(A, rr, 2.0 / 3.0);
  const double f = power_difference(A, rr, -1.0 / 3.0);
  const double df = -nn / 3.0 * power_difference(A, rr, -4.0 / 3.0);
  const double d3f = -(28.0 / 27.0) * nn * nn * nn * power_difference(A, rr, -10.0 / 3.0);
  return s + integral + 0.5 * f - df / 12.0 + d3f / 720.0;
}

// P_r = sum_{q >= 0} (r + q n)^{-7/3}, r >= 1
double periodic_singular_weight(std::size_t r, std::size_t n) {
  const double rr = static_cast<double>(r);
  const double nn = static_cast<double>(n);
  double s = 0.0;
  for (std::size_t q = 0; q < kDirectPeriods; ++q) s += std::pow(rr + static_cast<double>(q) * nn, -7.0 / 3.0);
  const double A = rr + static_cast<double>(kDirectPeriods) * nn;
  const double integral = 0.75 / nn * std::pow(A, -4.0 / 3.0);
  const double f = std::pow(A, -7.0 / 3.0);
  const double df = -7.0 / 3.0 * nn * std::pow(A, -10.0 / 3.0);
  return s + integral + 0.5 * f - df / 12.0;
}

// Trapezoid sums over m >= 1 with half weight on m = 1.
double zeta_trapezoid(double s) { return std::riemann_zeta(s) - 0.5; }

void require_periodic(const Field& f, const char* who) {
  if (f.boundary.kind != BoundaryKind::periodic) {
    throw std::invalid_argument(std::string(who) + ": needs a periodic field");
  }
}

}  // namespace

QuadratureOperator::QuadratureOperator(const SpatialGrid& grid, ConvolutionMethod method)
    : grid_(grid), method_(method) {
  grid_.validate();
  const std::size_t n = grid_.n;
  weights_.resize(n + 1);
  for (std::size_t m = 0; m <= n; ++m) weights_[m] = std::pow(static_cast<double>(m + 1), -1.0 / 3.0);

  std::vector<double> G(n);
  for (std::size_t r = 0; r < n; ++r) G[r] = regularised_periodic_weight(r, n);
  const double scale = std::pow(grid_.dx, -4.0 / 3.0);
  kernel_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double g0 = G[m];
    const double g1 = G[(m + n - 1) % n];
    const double g2 = G[(m + n - 2) % n];
    kernel_[m] = scale * (g0 - 2.0 * g1 + g2);
  }
  multiplier_ = circulant_multiplier(kernel_);
  multiplier_[0] = cplx{0.0, 0.0};
}

void QuadratureOperator::apply_periodic(std::span<const double> u, std::span<double> out) const {
  if (u.size() != grid_.n || out.size() != grid_.n) throw std::invalid_argument("QuadratureOperator: size mismatch");
  if (method_ == ConvolutionMethod::fft) {
    circulant_apply_fft(multiplier_, u, out);
  } else {
    circulant_apply_direct(kernel_, u, out);
  }
}

void QuadratureOperator::apply_open(std::span<const double> u, const Boundary& b, std::span<double> out) const {
  const std::size_t n = grid_.n;
  if (u.size() != n || out.size() != n) throw std::invalid_argument("QuadratureOperator: size mismatch");
  Field f(grid_, std::vector<double>(u.begin(), u.end()), b);
  // second[t] = g_{t-1}; g_i = 0 for i <= -2 under both open rules.
  std::vector<double> second(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto i = static_cast<std::ptrdiff_t>(t) - 1;
    second[t] = f.at(i + 1) - 2.0 * f.at(i) + f.at(i - 1);
  }
  causal_apply(std::span<const double>(weights_).first(n), second, out);
  const double scale = std::pow(grid_.dx, -4.0 / 3.0);
  for (double& v : out) v *= scale;
}

Field QuadratureOperator::apply(const Field& f) const {
  f.validate();
  if (f.grid.n != grid_.n || f.grid.dx != grid_.dx) throw std::invalid_argument("QuadratureOperator: grid mismatch");
  Field out(f.grid, std::vector<double>(f.size()), f.boundary);
  if (f.boundary.kind == BoundaryKind::periodic) {
    apply_periodic(f.values, out.values);
  } else {
    apply_open(f.values, f.boundary, out.values);
  }
  return out;
}

Field apply_quadrature(const Field& f, ConvolutionMethod method) {
  f.validate();
  return QuadratureOperator(f.grid, method).apply(f);
}

Field apply_singular(const Field& f) {
  f.validate();
  const std::size_t n = f.grid.n;
  const double dx = f.grid.dx;
  const double C = 4.0 / 9.0;
  const double scale = std::pow(dx, -4.0 / 3.0);
  const double z0 = zeta_trapezoid(7.0 / 3.0);
  const double z1 = zeta_trapezoid(4.0 / 3.0);
  const double inner = 0.75 * std::pow(dx, 2.0 / 3.0) / (dx * dx);

  Field out(f.grid, std::vector<double>(n), f.boundary);

  if (f.boundary.kind == BoundaryKind::periodic) {
    // Single circulant kernel holding the node sum and all local terms.
    std::vector<double> kernel(n, 0.0);
    for (std::size_t m = 1; m <= n; ++m) {
      double w = periodic_singular_weight(m, n);
      if (m == 1) w -= 0.5;
      kernel[m % n] += C * scale * w;
    }
    kernel[0] += -C * scale * z0;
    const double d1 = C * scale * dx * z1 / (2.0 * dx);
    kernel[n - 1] += d1;  // phi_{j+1}
    kernel[1] += -d1;     // phi_{j-1}
    kernel[n - 1] += C * inner;
    kernel[0] += -2.0 * C * inner;
    kernel[1] += C * inner;
    circulant_apply_fft(circulant_multiplier(kernel), f.values, out.values);
    return out;
  }

  // Open boundary: finite node sum plus a closed-form ghost tail. Upstream
  // samples follow phi_i = A + B i.
  double A = 0.0, B = 0.0;
  if (f.boundary.kind == BoundaryKind::far_field) {
    A = f.boundary.far_value;
  } else {
    A = f.values[0];
    B = f.values[1] - f.values[0];
  }
  std::vector<double> h(n);
  for (std::size_t m = 0; m < n; ++m) h[m] = std::pow(static_cast<double>(m + 1), -7.0 / 3.0);
  h[0] *= 0.5;
  // finite[j] = sum'_{m=1}^{j} phi_{j-m} m^{-7/3}
  std::vector<double> shifted(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) shifted[j] = f.values[j - 1];
  std::vector<double> finite(n);
  causal_apply(h, shifted, finite);

  double partial0 = 0.0;  // sum'_{m=1}^{j} m^{-7/3}
  double partial1 = 0.0;  // sum'_{m=1}^{j} m^{-4/3}
  for (std::size_t j = 0; j < n; ++j) {
    if (j >= 1) {
      const double mj = static_cast<double>(j);
      const double half = j == 1 ? 0.5 : 1.0;
      partial0 += half * std::pow(mj, -7.0 / 3.0);
      partial1 += half * std::pow(mj, -4.0 / 3.0);
    }
    const auto jj = static_cast<std::ptrdiff_t>(j);
    const double tail = (A + B * static_cast<double>(j)) * (z0 - partial0) - B * (z1 - partial1);
    const double S = finite[j] + tail;
    const double up = f.at(jj + 1), mid = f.values[j], down = f.at(jj - 1);
    const double d1 = (up - down) / (2.0 * dx);
    const double d2 = (up - 2.0 * mid + down) / (dx * dx);
    out.values[j] = C * (0.75 * std::pow(dx, 2.0 / 3.0) * d2 + scale * (S - mid * z0 + dx * d1 * z1));
  }
  return out;
}

Field apply_spectral(const Field& f, const SymbolParams& p) {
  f.validate();
  require_periodic(f, "apply_spectral");
  Spectrum s = to_spectrum(f);
  apply_multiplier(s, [&](double xi) { return sigma_I(xi, p); });
  double l1 = 0.0;
  for (const cplx& c : s.coeffs) l1 += std::abs(c);
  return to_field(s, 1e-8, l1 / static_cast<double>(s.coeffs.size()));
}

double causal_oracle(double p, double x) {
  if (!(p >= 2.0)) throw std::invalid_argument("causal_oracle: exponent must be >= 2");
  if (!(x > 0.0)) throw std::invalid_argument("causal_oracle: x must be positive");
  return std::tgamma(2.0 / 3.0) * std::tgamma(p + 1.0) / std::tgamma(p - 1.0 / 3.0) * std::pow(x, p - 4.0 / 3.0);
}

double fitted_order(std::span<const double> spacings, std::span<const double> errors) {
  if (spacings.size() != errors.size() || spacings.size() < 2) throw std::invalid_argument("fitted_order: need >= 2 points");
  const double n = static_cast<double>(spacings.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    const double x = std::log(spacings[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<OperatorCheckRow> operator_check(std::size_t n, double length) {
  const SymbolParams p = derive_constants();
  std::vector<OperatorCheckRow> rows;
  auto add = [&](std::string test, std::size_t gn, std::string metric, double value, double tol, bool pass) {
    rows.push_back({std::move(test), gn, std::move(metric), value, tol, pass});
  };
  auto rel = [](const Field& a, const Field& ref) { return l2_distance(a, ref) / l2_norm(ref); };
  auto max_abs = [](const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
  };

  // Gaussian: singular vs spectral.
  {
    const SpatialGrid g = SpatialGrid::with_length(n, length, -0.5 * length);
    const Field gauss = Field::sample(g, [](double x) { return std::exp(-x * x); });
    const double e = rel(apply_singular(gauss), apply_spectral(gauss, p));
    add("gaussian_singular_vs_spectral", n, "relative_l2", e, 1e-2, e <= 1e-2);
    const double eq = rel(apply_quadrature(gauss), apply_spectral(gauss, p));
    add("gaussian_quadrature_vs_spectral", n, "relative_l2", eq, 0.0, true);
  }

  // Band-limited refinement: quadrature vs spectral.
  {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> amp(0.5, 1.0), phase(0.0, 2.0 * std::numbers::pi);
    double a[4], ph[4];
    for (int k = 0; k < 4; ++k) {
      a[k] = amp(rng);
      ph[k] = phase(rng);
    }
    auto f = [&](double x) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a[k] * std::cos(2.0 * std::numbers::pi * (k + 1) * x / length + ph[k]);
      return s;
    };
    std::vector<double> dxs, errs;
    bool decreasing = true;
    for (std::size_t m = n >> 4; m <= n; m <<= 1) {
      const SpatialGrid g = SpatialGrid::with_length(m, length);
      const Field u = Field::sample(g, f);
      const double e = rel(apply_quadrature(u), apply_spectral(u, p));
      if (!errs.empty() && e >= errs.back()) decreasing = false;
      dxs.push_back(g.dx);
      errs.push_back(e);
      add("refinement_quadrature_vs_spectral", m, "relative_l2", e, 0.0, true);
    }
    const double order = fitted_order(dxs, errs);
    add("refinement_quadrature_vs_spectral", n, "fitted_order", order, 2.0 / 3.0, decreasing && order >= 2.0 / 3.0);
  }

  // Causal oracle: x_+^2 on [0, 1] with dx = 1/4096.
  {
    constexpr std::size_t nc = 4096;
    const SpatialGrid g{nc, 1.0 / nc, 0.0};
    const Field u = Field::sample(g, [](double x) { return x * x; }, Boundary::far_field(0.0));
    const Field q = apply_quadrature(u);
    double worst = 0.0;
    for (std::size_t j = 0; j < nc; ++j) {
      const double x = g.x(j);
      if (x < 0.25 || x > 0.75) continue;
      const double exact = causal_oracle(2.0, x);
      worst = std::max(worst, std::abs(q.values[j] - exact) / exact);
    }
    add("causal_x_plus_squared", nc, "max_relative_error", worst, 0.02, worst <= 0.02);
  }

  // Annihilation of constants and affines.
  {
    const SpatialGrid g = SpatialGrid::with_length(n, length, -0.5 * length);
    const Field c = Field::sample(g, [](double) { return 3.25; });
    const Field aff = Field::sample(g, [](double x) { return 1.5 - 0.75 * x; }, Boundary::linear_extension());
    const double v1 = max_abs(apply_quadrature(c, ConvolutionMethod::fft));
    const double v2 = max_abs(apply_quadrature(c, ConvolutionMethod::direct));
    const double v3 = max_abs(apply_spectral(c, p));
    const double v4 = max_abs(apply_quadrature(aff));
    const double v5 = max_abs(apply_singular(aff));
    add("constant_quadrature_fft", n, "max_abs", v1, 1e-10, v1 <= 1e-10);
    add("constant_quadrature_direct", n, "max_abs", v2, 1e-10, v2 <= 1e-10);
    add("constant_spectral", n, "max_abs", v3, 1e-10, v3 <= 1e-10);
    add("affine_quadrature", n, "max_abs", v4, 1e-10, v4 <= 1e-10);
    add("affine_singular", n, "max_abs", v5, 1e-10, v5 <= 1e-10);
  }

  // Translation equivariance on the periodic grid.
  {
    const SpatialGrid g = SpatialGrid::with_length(n, length, -0.5 * length);
    const Field u = Field::sample(g, [](double x) { return std::exp(-x * x) * (1.0 + 0.3 * x); });
    constexpr std::size_t shift = 37;
    Field us = u;
    for (std::size_t j = 0; j < n; ++j) us.values[(j + shift) % n] = u.values[j];
    const QuadratureOperator op(g);
    const Field a = op.apply(u);
    const Field b = op.apply(us);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(b.values[(j + shift) % n] - a.values[j]));
    worst /= max_abs(a);
    add("translation_equivariance", n, "max_relative", worst, 1e-12, worst <= 1e-12);
  }
  return rows;
}

}  // namespace fowler

#include "fowler/simd/kernels.hpp"

namespace fowler::simd {

namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void convolve(const double* h, std::size_t taps, const double* x, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    const double* xj = x + j;
    for (std::size_t m = 0; m < taps; ++m) acc += h[m] * xj[-static_cast<std::ptrdiff_t>(m)];
    out[j] = acc;
  }
}

void complex_multiply(const cplx* m, cplx* z, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double a = m[k].real(), b = m[k].imag();
    const double c = z[k].real(), d = z[k].imag();
    z[k] = cplx{a * c - b * d, a * d + b * c};
  }
}

double sum_squares(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void fd_update(const FdCoefficients& c, const double* u, const double* q, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double* uj = u + j;
    const double um = uj[-1];
    const double u0 = uj[0];
    const double up = uj[1];
    const double flux = u0 * u0 - um * um;
    const double lap = up - 2.0 * u0 + um;
    out[j] = u0 - c.flux * flux + c.diffusion * lap - c.source * q[j];
  }
}

}  // namespace

namespace detail {
const KernelTable kScalarTable{"scalar", axpy, convolve, complex_multiply, sum_squares, fd_update};
}

}  // namespace fowler::simd

// AVX2/FMA variants. Compiled with -mavx2 -mfma -ffp-contract=off and only
// reached through the dispatcher after __builtin_cpu_supports checks.

#include <immintrin.h>

#include "fowler/simd/kernels.hpp"

namespace fowler::simd {

namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

// Blocks of 16 outputs kept in four accumulators; the taps are broadcast.
void convolve(const double* h, std::size_t taps, const double* x, double* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 16 <= n; j += 16) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    const double* xj = x + j;
    for (std::size_t m = 0; m < taps; ++m) {
      const __m256d hm = _mm256_broadcast_sd(h + m);
      const double* src = xj - static_cast<std::ptrdiff_t>(m);
      a0 = _mm256_fmadd_pd(hm, _mm256_loadu_pd(src), a0);
      a1 = _mm256_fmadd_pd(hm, _mm256_loadu_pd(src + 4), a1);
      a2 = _mm256_fmadd_pd(hm, _mm256_loadu_pd(src + 8), a2);
      a3 = _mm256_fmadd_pd(hm, _mm256_loadu_pd(src + 12), a3);
    }
    _mm256_storeu_pd(out + j, a0);
    _mm256_storeu_pd(out + j + 4, a1);
    _mm256_storeu_pd(out + j + 8, a2);
    _mm256_storeu_pd(out + j + 12, a3);
  }
  for (; j < n; ++j) {
    double acc = 0.0;
    const double* xj = x + j;
    for (std::size_t m = 0; m < taps; ++m) acc += h[m] * xj[-static_cast<std::ptrdiff_t>(m)];
    out[j] = acc;
  }
}

// Two complex numbers per register, interleaved (re, im, re, im).
void complex_multiply(const cplx* m, cplx* z, std::size_t n) {
  auto* zp = reinterpret_cast<double*>(z);
  const auto* mp = reinterpret_cast<const double*>(m);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d mv = _mm256_loadu_pd(mp + 2 * k);
    const __m256d zv = _mm256_loadu_pd(zp + 2 * k);
    const __m256d m_re = _mm256_movedup_pd(mv);          // a a
    const __m256d m_im = _mm256_permute_pd(mv, 0xF);     // b b
    const __m256d z_sw = _mm256_permute_pd(zv, 0x5);     // d c
    const __m256d t = _mm256_mul_pd(m_im, z_sw);         // b d, b c
    // (a c - b d, a d + b c)
    _mm256_storeu_pd(zp + 2 * k, _mm256_fmaddsub_pd(m_re, zv, t));
  }
  for (; k < n; ++k) {
    const double a = m[k].real(), b = m[k].imag();
    const double c = z[k].real(), d = z[k].imag();
    z[k] = cplx{a * c - b * d, a * d + b * c};
  }
}

double sum_squares(const double* x, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(x + i);
    const __m256d v1 = _mm256_loadu_pd(x + i + 4);
    s0 = _mm256_fmadd_pd(v0, v0, s0);
    s1 = _mm256_fmadd_pd(v1, v1, s1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(s0, s1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

// Same operation order as the scalar reference and no fused multiply-add,
// so both variants produce identical bits.
void fd_update(const FdCoefficients& c, const double* u, const double* q, double* out, std::size_t n) {
  const __m256d cf = _mm256_set1_pd(c.flux);
  const __m256d cd = _mm256_set1_pd(c.diffusion);
  const __m256d cs = _mm256_set1_pd(c.source);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d um = _mm256_loadu_pd(u + j - 1);
    const __m256d u0 = _mm256_loadu_pd(u + j);
    const __m256d up = _mm256_loadu_pd(u + j + 1);
    const __m256d flux = _mm256_sub_pd(_mm256_mul_pd(u0, u0), _mm256_mul_pd(um, um));
    const __m256d lap = _mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, u0)), um);
    __m256d r = _mm256_sub_pd(u0, _mm256_mul_pd(cf, flux));
    r = _mm256_add_pd(r, _mm256_mul_pd(cd, lap));
    r = _mm256_sub_pd(r, _mm256_mul_pd(cs, _mm256_loadu_pd(q + j)));
    _mm256_storeu_pd(out + j, r);
  }
  for (; j < n; ++j) {
    const double* uj = u + j;
    const double flux = uj[0] * uj[0] - uj[-1] * uj[-1];
    const double lap = uj[1] - 2.0 * uj[0] + uj[-1];
    out[j] = uj[0] - c.flux * flux + c.diffusion * lap - c.source * q[j];
  }
}

}  // namespace

namespace detail {
const KernelTable kAvx2Table{"avx2", axpy, convolve, complex_multiply, sum_squares, fd_update};
}

}  // namespace fowler::simd

#pragma once

// Data-parallel inner loops of the solvers. Every kernel has a scalar
// reference implementation; x86-64 builds add AVX2/FMA variants that are
// selected at runtime after a CPU feature check. The variants are
// equivalence-tested against the scalar versions.

#include <complex>
#include <cstddef>

namespace fowler::simd {

using cplx = std::complex<double>;

/// Coefficients of the explicit update
///   out_j = u_j - flux (u_j^2 - u_{j-1}^2) + diffusion (u_{j+1} - 2 u_j + u_{j-1}) - source q_j
struct FdCoefficients {
  double flux = 0.0;       // dt / (2 dx), or 0 with the nonlinearity disabled
  double diffusion = 0.0;  // dt / dx^2
  double source = 0.0;     // dt
};

struct KernelTable {
  const char* name;

  /// y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);

  /// out[j] = sum_{m < taps} h[m] * x[j - m] for j < n. x must be readable
  /// from x - (taps - 1) to x + n - 1.
  void (*convolve)(const double* h, std::size_t taps, const double* x, double* out, std::size_t n);

  /// z[k] *= m[k]
  void (*complex_multiply)(const cplx* m, cplx* z, std::size_t n);

  /// sum x[i]^2
  double (*sum_squares)(const double* x, std::size_t n);

  /// Finite-difference update. u must be readable at u[-1] and u[n] (ghosts).
  void (*fd_update)(const FdCoefficients& c, const double* u, const double* q, double* out, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Kernels picked once per process: AVX2 when available, unless the
/// environment variable FOWLER_SIMD is set to "scalar".
const KernelTable& active_kernels();

namespace detail {
extern const KernelTable kScalarTable;
#if defined(FOWLER_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
}  // namespace detail

}  // namespace fowler::simd

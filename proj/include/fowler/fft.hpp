#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace fowler {

using cplx = std::complex<double>;

/// Complex-to-complex DFT of a fixed size backed by FFTW.
///
/// forward:  X_k = sum_j x_j exp(-2 pi i j k / n)
/// inverse:  x_j = sum_k X_k exp(+2 pi i j k / n)   (no 1/n factor)
///
/// Planning goes through a process-wide lock; execution is lock-free, so
/// distinct Fft objects may be used from distinct threads.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const;
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  void inverse(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Per-thread cached transform of size n.
const Fft& fft_for(std::size_t n);

}  // namespace fowler

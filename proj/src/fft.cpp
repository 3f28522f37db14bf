#include "fowler/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fowler {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Impl {
  std::size_t n = 0;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Impl(std::size_t size) : n(size) {
    if (n == 0) throw std::invalid_argument("Fft: size must be positive");
    std::lock_guard lock(planner_mutex());
    in = fftw_alloc_complex(n);
    out = fftw_alloc_complex(n);
    if (!in || !out) throw std::bad_alloc();
    const int ni = static_cast<int>(n);
    fwd = fftw_plan_dft_1d(ni, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(ni, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd || !bwd) throw std::runtime_error("Fft: FFTW planning failed");
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    fftw_free(in);
    fftw_free(out);
  }

  void run(fftw_plan plan, std::span<const cplx> src, std::span<cplx> dst) const {
    if (src.size() != n || dst.size() != n) throw std::invalid_argument("Fft: buffer size mismatch");
    std::copy(src.begin(), src.end(), reinterpret_cast<cplx*>(in));
    fftw_execute(plan);
    const cplx* o = reinterpret_cast<const cplx*>(out);
    std::copy(o, o + n, dst.begin());
  }
};

Fft::Fft(std::size_t n) : impl_(std::make_unique<Impl>(n)) {}
Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

std::size_t Fft::size() const { return impl_->n; }

void Fft::forward(std::span<const cplx> in, std::span<cplx> out) const { impl_->run(impl_->fwd, in, out); }
void Fft::inverse(std::span<const cplx> in, std::span<cplx> out) const { impl_->run(impl_->bwd, in, out); }

const Fft& fft_for(std::size_t n) {
  thread_local std::map<std::size_t, Fft> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Fft(n)).first;
  return it->second;
}

}  // namespace fowler

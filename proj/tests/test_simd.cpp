#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "fowler/simd/kernels.hpp"

using namespace fowler;
using namespace fowler::simd;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = U(rng);
  return v;
}

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
    s = std::max(s, std::abs(b[i]));
  }
  return s > 0 ? m / s : m;
}

// Sizes exercise full blocks and every remainder length.
constexpr std::size_t kSizes[] = {1, 3, 4, 7, 15, 16, 17, 33, 100, 1024, 1031};

}  // namespace

TEST_CASE("dispatcher returns a usable table") {
  const KernelTable& t = active_kernels();
  CHECK(t.name != nullptr);
  CHECK(t.axpy != nullptr);
  CHECK(std::strcmp(scalar_kernels().name, "scalar") == 0);
  if (const char* env = std::getenv("FOWLER_SIMD"); env && std::strcmp(env, "scalar") == 0) {
    CHECK(&t == &scalar_kernels());
  }
}

#define REQUIRE_AVX2                                                 \
  const KernelTable* v = avx2_kernels();                            \
  if (v == nullptr) {                                               \
    MESSAGE("AVX2 not available on this CPU; equivalence skipped"); \
    return;                                                         \
  }                                                                 \
  const KernelTable& s = scalar_kernels()

TEST_CASE("avx2 axpy matches scalar") {
  REQUIRE_AVX2;
  for (std::size_t n : kSizes) {
    const auto x = random_vec(n, 1);
    auto y1 = random_vec(n, 2), y2 = y1;
    s.axpy(0.37, x.data(), y1.data(), n);
    v->axpy(0.37, x.data(), y2.data(), n);
    CHECK(max_rel(y2, y1) <= 1e-15);
  }
}

TEST_CASE("avx2 convolve matches scalar") {
  REQUIRE_AVX2;
  for (std::size_t n : kSizes) {
    const std::size_t taps = n;
    const auto h = random_vec(taps, 3);
    const auto buf = random_vec(n + taps, 4);
    std::vector<double> o1(n), o2(n);
    const double* x = buf.data() + taps;
    s.convolve(h.data(), taps, x, o1.data(), n);
    v->convolve(h.data(), taps, x, o2.data(), n);
    CAPTURE(n);
    CHECK(max_rel(o2, o1) <= 1e-13);
  }
}

TEST_CASE("avx2 complex_multiply matches scalar") {
  REQUIRE_AVX2;
  for (std::size_t n : kSizes) {
    const auto a = random_vec(2 * n, 5), b = random_vec(2 * n, 6);
    std::vector<cplx> m(n), z1(n), z2(n);
    for (std::size_t k = 0; k < n; ++k) {
      m[k] = {a[2 * k], a[2 * k + 1]};
      z1[k] = z2[k] = {b[2 * k], b[2 * k + 1]};
    }
    s.complex_multiply(m.data(), z1.data(), n);
    v->complex_multiply(m.data(), z2.data(), n);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(z1[k] - z2[k]) <= 1e-15 * (1.0 + std::abs(z1[k])));
  }
}

TEST_CASE("avx2 sum_squares matches scalar") {
  REQUIRE_AVX2;
  for (std::size_t n : kSizes) {
    const auto x = random_vec(n, 7);
    const double a = s.sum_squares(x.data(), n), b = v->sum_squares(x.data(), n);
    CHECK(std::abs(a - b) <= 1e-13 * a);
  }
}

TEST_CASE("avx2 fd_update is bit-identical to scalar") {
  REQUIRE_AVX2;
  for (std::size_t n : kSizes) {
    const auto u = random_vec(n + 2, 8), q = random_vec(n, 9);
    std::vector<double> o1(n), o2(n);
    const FdCoefficients c{0.013, 0.21, 0.0017};
    s.fd_update(c, u.data() + 1, q.data(), o1.data(), n);
    v->fd_update(c, u.data() + 1, q.data(), o2.data(), n);
    CAPTURE(n);
    CHECK(std::memcmp(o1.data(), o2.data(), n * sizeof(double)) == 0);
  }
}

TEST_CASE("scalar kernels against naive loops") {
  const KernelTable& s = scalar_kernels();
  const std::vector<double> h = {1.0, -2.0, 0.5};
  const std::vector<double> buf = {9, 9, 1, 2, 3, 4};  // x[-2..3]
  std::vector<double> out(4);
  s.convolve(h.data(), 3, buf.data() + 2, out.data(), 4);
  // out[j] = x[j] - 2 x[j-1] + 0.5 x[j-2]
  CHECK(out[0] == doctest::Approx(1 - 18 + 4.5));
  CHECK(out[1] == doctest::Approx(2 - 2 + 4.5));
  CHECK(out[3] == doctest::Approx(4 - 6 + 1));

  const std::vector<double> u = {1, 2, 3, 4};  // ghost, u0, u1, ghost
  const std::vector<double> q = {10, 20};
  std::vector<double> o(2);
  s.fd_update({0.5, 0.25, 0.1}, u.data() + 1, q.data(), o.data(), 2);
  CHECK(o[0] == doctest::Approx(2 - 0.5 * (4 - 1) + 0.25 * (3 - 4 + 1) - 1.0));
  CHECK(o[1] == doctest::Approx(3 - 0.5 * (9 - 4) + 0.25 * (4 - 6 + 2) - 2.0));
}

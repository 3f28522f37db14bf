#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fowler/nonlocal_op.hpp"

using namespace fowler;

namespace {

Field random_periodic(const SpatialGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  std::vector<double> v(g.n);
  for (double& x : v) x = N(rng);
  return Field(g, std::move(v));
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("impulse response of the quadrature sum by hand") {
  const SpatialGrid g = SpatialGrid::with_length(64, 20.0);
  std::vector<double> e0(64, 0.0);
  e0[0] = 1.0;
  const Field out = apply_quadrature(Field(g, e0, Boundary::far_field(0.0)));
  const double s = std::pow(g.dx, -4.0 / 3.0);
  const double w2 = std::pow(2.0, -1.0 / 3.0), w3 = std::pow(3.0, -1.0 / 3.0);
  CHECK(out.values[0] == doctest::Approx(s).epsilon(1e-13));
  CHECK(out.values[1] == doctest::Approx(s * (w2 - 2.0)).epsilon(1e-13));
  CHECK(out.values[2] == doctest::Approx(s * (w3 - 2.0 * w2 + 1.0)).epsilon(1e-13));
}

TEST_CASE("periodic multiplier equals the discrete symbol of the quadrature sum") {
  // dx^{-4/3} (2 cos t - 2) Li_{1/3}(e^{-i t}), t = 2 pi k / n, n = 64, L = 20 (mpmath).
  const QuadratureOperator op(SpatialGrid::with_length(64, 20.0));
  const auto m = op.multiplier();
  struct Ref {
    std::size_t k;
    double re, im;
  };
  for (const Ref r : {Ref{1, -0.1002805486871920907, 0.24955647056124516832},
                      Ref{5, -0.12965013449542379871, 2.0136216128356164496},
                      Ref{16, 4.2798474956251777567, 5.8270658788209297812},
                      Ref{32, 10.784539900156035086, 0.0}}) {
    CAPTURE(r.k);
    CHECK(std::abs(m[r.k] - cplx{r.re, r.im}) <= 1e-9 * std::abs(cplx{r.re, r.im}));
    CHECK(std::abs(m[64 - r.k] - std::conj(m[r.k])) <= 1e-13 * std::abs(m[r.k]));
  }
  CHECK(m[0] == cplx{0.0, 0.0});
}

TEST_CASE("quadrature annihilates constants and affines") {
  const SpatialGrid g = SpatialGrid::with_length(256, 20.0, -10.0);
  const Field c = Field::sample(g, [](double) { return -7.5; });
  CHECK(max_abs(apply_quadrature(c)) <= 1e-10);
  CHECK(max_abs(apply_quadrature(c, ConvolutionMethod::direct)) <= 1e-10);
  const Field a = Field::sample(g, [](double x) { return 2.0 + 0.4 * x; }, Boundary::linear_extension());
  CHECK(max_abs(apply_quadrature(a)) <= 1e-10);
  Field far = Field::sample(g, [](double) { return 1.25; }, Boundary::far_field(1.25));
  CHECK(max_abs(apply_quadrature(far)) <= 1e-10);
}

TEST_CASE("fft and direct convolution agree") {
  const SpatialGrid g = SpatialGrid::with_length(200, 20.0);
  const Field u = random_periodic(g, 11);
  const Field a = apply_quadrature(u, ConvolutionMethod::fft);
  const Field b = apply_quadrature(u, ConvolutionMethod::direct);
  CHECK(l2_distance(a, b) <= 1e-12 * l2_norm(a));
}

TEST_CASE("periodic quadrature conserves the sample sum") {
  const SpatialGrid g = SpatialGrid::with_length(512, 30.0);
  const Field out = apply_quadrature(random_periodic(g, 3));
  double s = 0.0;
  for (double v : out.values) s += v;
  CHECK(std::abs(s) <= 1e-10 * max_abs(out));
}

TEST_CASE("translation equivariance on the periodic grid") {
  const SpatialGrid g = SpatialGrid::with_length(128, 16.0);
  const Field u = random_periodic(g, 5);
  const QuadratureOperator op(g);
  for (std::size_t shift : {1u, 17u, 64u}) {
    Field us = u;
    for (std::size_t j = 0; j < g.n; ++j) us.values[(j + shift) % g.n] = u.values[j];
    const Field a = op.apply(u), b = op.apply(us);
    for (std::size_t j = 0; j < g.n; ++j) CHECK(std::abs(b.values[(j + shift) % g.n] - a.values[j]) <= 1e-12 * max_abs(a));
  }
}

TEST_CASE("spectral form on a single cosine") {
  const double L = 20.0;
  const SpatialGrid g = SpatialGrid::with_length(128, L);
  const SymbolParams p = derive_constants();
  const double xi = 1.0 / L;
  const Field u = Field::sample(g, [&](double x) { return std::cos(2.0 * std::numbers::pi * xi * x); });
  const Field out = apply_spectral(u, p);
  const cplx s = sigma_I(xi, p);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double th = 2.0 * std::numbers::pi * xi * g.x(j);
    CHECK(out.values[j] == doctest::Approx(s.real() * std::cos(th) - s.imag() * std::sin(th)).epsilon(1e-12).scale(1.0));
  }
  CHECK(max_abs(apply_spectral(Field::sample(g, [](double) { return 4.0; }), p)) <= 1e-10);
  CHECK_THROWS_AS(apply_spectral(Field(g, u.values, Boundary::far_field(0.0)), p), std::invalid_argument);
}

TEST_CASE("singular form annihilates constants and affines") {
  const SpatialGrid g = SpatialGrid::with_length(256, 20.0, -10.0);
  CHECK(max_abs(apply_singular(Field::sample(g, [](double) { return 3.0; }))) <= 1e-10);
  CHECK(max_abs(apply_singular(Field::sample(g, [](double x) { return 1 - x; }, Boundary::linear_extension()))) <= 1e-10);
  CHECK(max_abs(apply_singular(Field::sample(g, [](double) { return 2.0; }, Boundary::far_field(2.0)))) <= 1e-10);
}

TEST_CASE("singular and spectral forms agree on a Gaussian and improve under refinement") {
  const SymbolParams p = derive_constants();
  double last = 1.0;
  for (std::size_t n : {256u, 512u, 1024u}) {
    const SpatialGrid g = SpatialGrid::with_length(n, 20.0, -10.0);
    const Field u = Field::sample(g, [](double x) { return std::exp(-x * x); });
    const Field ref = apply_spectral(u, p);
    const double e = l2_distance(apply_singular(u), ref) / l2_norm(ref);
    CAPTURE(n);
    CHECK(e < last);
    last = e;
  }
  CHECK(last <= 1e-2);
}

TEST_CASE("open-boundary singular form matches the periodic one on a compact bump") {
  const SpatialGrid g = SpatialGrid::with_length(1024, 40.0, -20.0);
  const Field u = Field::sample(g, [](double x) { return std::exp(-x * x); });
  Field far = u;
  far.boundary = Boundary::far_field(0.0);
  const Field a = apply_singular(u), b = apply_singular(far);
  // Differences come only from the periodic images, which are O(L^{-4/3}).
  CHECK(l2_distance(a, b) <= 2e-2 * l2_norm(a));
}

TEST_CASE("causal oracle") {
  CHECK(causal_oracle(2.0, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(causal_oracle(2.0, 8.0) == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(causal_oracle(3.0, 1.0) == doctest::Approx(5.4).epsilon(1e-14));
  CHECK_THROWS_AS(causal_oracle(1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(causal_oracle(2.0, 0.0), std::invalid_argument);
}

TEST_CASE("quadrature on a causal cubic") {
  constexpr std::size_t n = 4096;
  const SpatialGrid g{n, 2.0 / n, 0.0};
  const Field u = Field::sample(g, [](double x) { return x * x * x; }, Boundary::far_field(0.0));
  const Field q = apply_quadrature(u);
  for (std::size_t j = n / 4; j <= 3 * n / 4; j += 64) {
    const double x = g.x(j);
    CHECK(std::abs(q.values[j] / causal_oracle(3.0, x) - 1.0) <= 0.02);
  }
}

TEST_CASE("operator check table") {
  const auto rows = operator_check(1024, 20.0);
  CHECK(rows.size() >= 10);
  for (const auto& r : rows) {
    CAPTURE(r.test);
    CAPTURE(r.value);
    CHECK(r.pass);
  }
}

TEST_CASE("fitted order") {
  const std::vector<double> h = {0.1, 0.05, 0.025};
  const std::vector<double> e = {2e-2, 5e-3, 1.25e-3};
  CHECK(fitted_order(h, e) == doctest::Approx(2.0));
  CHECK_THROWS(fitted_order(std::vector<double>{1.0}, std::vector<double>{1.0}));
}

TEST_CASE("non-finite input is rejected") {
  const SpatialGrid g = SpatialGrid::with_length(16, 1.0);
  std::vector<double> v(16, 0.0);
  v[2] = INFINITY;
  CHECK_THROWS_AS(apply_quadrature(Field(g, v)), std::invalid_argument);
  CHECK_THROWS_AS(apply_singular(Field(g, v)), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureOperator(SpatialGrid::with_length(4, 1.0)), std::invalid_argument);
}

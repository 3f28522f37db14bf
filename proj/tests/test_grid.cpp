#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fowler/fft.hpp"
#include "fowler/grid.hpp"

using namespace fowler;

TEST_CASE("grid geometry and frequencies") {
  const SpatialGrid g = SpatialGrid::with_length(8, 4.0, -2.0);
  CHECK(g.dx == 0.5);
  CHECK(g.length() == 4.0);
  CHECK(g.x(0) == -2.0);
  CHECK(g.x(3) == -0.5);
  CHECK(g.frequency(0) == 0.0);
  CHECK(g.frequency(1) == 0.25);
  CHECK(g.frequency(4) == 1.0);
  CHECK(g.frequency(5) == -0.75);
  CHECK(g.nyquist() == 1.0);
  CHECK(g.is_power_of_two());
  CHECK_FALSE(SpatialGrid::with_length(12, 1.0).is_power_of_two());
  CHECK_THROWS_AS(SpatialGrid::with_length(4, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS((SpatialGrid{16, -1.0, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("field validation and boundary ghosts") {
  const SpatialGrid g = SpatialGrid::with_length(8, 8.0);
  const Field f = Field::sample(g, [](double x) { return 2.0 + x; });
  CHECK(f.at(-1) == f.values[7]);
  CHECK(f.at(9) == f.values[1]);

  Field ff = f;
  ff.boundary = Boundary::far_field(-3.0);
  CHECK(ff.at(-5) == -3.0);
  CHECK(ff.at(8) == -3.0);

  Field lin = f;
  lin.boundary = Boundary::linear_extension();
  CHECK(lin.at(-2) == doctest::Approx(0.0));
  CHECK(lin.at(10) == doctest::Approx(12.0));

  Field bad = f;
  bad.values[3] = NAN;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.values.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("fft matches a direct DFT") {
  constexpr std::size_t n = 24;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N;
  std::vector<cplx> x(n), X(n), back(n);
  for (auto& z : x) z = {N(rng), N(rng)};
  const Fft& f = fft_for(n);
  f.forward(x, X);
  for (std::size_t k = 0; k < n; ++k) {
    cplx ref{};
    for (std::size_t j = 0; j < n; ++j) ref += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * double(j * k) / n);
    CHECK(std::abs(X[k] - ref) <= 1e-12);
  }
  f.inverse(X, back);
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(back[j] / double(n) - x[j]) <= 1e-13);
  CHECK(&fft_for(n) == &f);
  CHECK(f.size() == n);
}

TEST_CASE("field to spectrum round trip") {
  const SpatialGrid g = SpatialGrid::with_length(256, 20.0, -10.0);
  const Field f = Field::sample(g, [](double x) { return std::exp(-x * x) * std::cos(3 * x); });
  const Field back = to_field(to_spectrum(f));
  CHECK(l2_distance(f, back) <= 1e-12 * l2_norm(f));

  // Parseval: dx sum |f|^2 = dx/n sum |c|^2
  const Spectrum s = to_spectrum(f);
  double e = 0.0;
  for (const cplx& c : s.coeffs) e += std::norm(c);
  CHECK(std::sqrt(g.dx / g.n * e) == doctest::Approx(l2_norm(f)).epsilon(1e-13));

  // Conjugate symmetry from a real field.
  for (std::size_t k = 1; k < g.n; ++k) CHECK(std::abs(s.coeffs[k] - std::conj(s.coeffs[g.n - k])) <= 1e-12);
}

TEST_CASE("to_field rejects an imaginary residue") {
  const SpatialGrid g = SpatialGrid::with_length(16, 1.0);
  Spectrum s{g, std::vector<cplx>(16)};
  s.coeffs[1] = {1.0, 0.0};  // one-sided: complex samples
  CHECK_THROWS_AS(to_field(s), std::runtime_error);
  s.coeffs[15] = {1.0, 0.0};
  CHECK_NOTHROW(to_field(s));
}

TEST_CASE("complex field norms") {
  const SpatialGrid g = SpatialGrid::with_length(64, 8.0);
  ComplexField c{g, std::vector<cplx>(64)};
  for (std::size_t j = 0; j < 64; ++j) c.values[j] = std::polar(2.0, 0.3 * j);
  CHECK(l2_norm(c) == doctest::Approx(2.0 * std::sqrt(8.0)));
  const ComplexField back = to_complex_field(to_spectrum(c));
  for (std::size_t j = 0; j < 64; ++j) CHECK(std::abs(back.values[j] - c.values[j]) <= 1e-13);
}

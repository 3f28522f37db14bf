#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fowler/experiments.hpp"
#include "fowler/kernel.hpp"

using namespace fowler;

namespace {

// Band edges on half-integer multiples of 1/L, so the band holds exactly
// (d - c) L lattice frequencies.
constexpr double kL = 512.0;
constexpr double kC = 10.5 / kL, kD = 40.5 / kL;

}  // namespace

TEST_CASE("w0 has unit norm, a flat band spectrum, and peak sqrt(d - c)") {
  const SpatialGrid g = SpatialGrid::with_length(1024, kL, -0.5 * kL);
  const ComplexField w = build_w0(kC, kD, g);
  CHECK(l2_norm(w) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l2_norm(build_w0_real(kC, kD, g)) == doctest::Approx(1.0).epsilon(1e-12));

  const Spectrum s = to_spectrum(w);
  const double amp = 1.0 / std::sqrt(kD - kC) / g.dx;
  for (std::size_t k = 0; k < g.n; ++k) {
    const double xi = s.frequency(k);
    const bool in = xi >= kC && xi <= kD;
    CHECK(std::abs(s.coeffs[k]) == doctest::Approx(in ? amp : 0.0).scale(1.0).epsilon(1e-10));
  }

  const std::size_t j0 = g.n / 2;
  REQUIRE(g.x(j0) == 0.0);
  CHECK(std::abs(w.values[j0] - w0_formula(0.0, kC, kD)) <= 1e-12);
  CHECK(w0_formula(0.0, kC, kD) == cplx{std::sqrt(kD - kC), 0.0});
  // Continuous form decays like 1/x and oscillates at the band centre.
  CHECK(std::abs(w0_formula(1.0 / (kD - kC), kC, kD)) <= 1e-12);
}

TEST_CASE("build_w0 rejects bad bands and short grids") {
  const SpatialGrid g = SpatialGrid::with_length(1024, kL);
  CHECK_THROWS_AS(build_w0(0.0, 0.1, g), std::invalid_argument);
  CHECK_THROWS_AS(build_w0(0.1, 0.1, g), std::invalid_argument);
  CHECK_THROWS_AS(build_w0(0.1, 1.5, g), std::invalid_argument);
  CHECK_THROWS_AS(build_w0(0.05, 0.06, SpatialGrid::with_length(256, 100.0)), std::invalid_argument);
}

TEST_CASE("witness constants") {
  const SymbolParams p = derive_constants();
  const auto [c, d] = default_witness_band(p);
  const SpatialGrid g = witness_grid(1024, 1024.0);
  const InstabilityWitness w = make_witness(1.0, c, d, 3, g, p);
  CHECK(w.beta == doctest::Approx(band_rate(c, d, p).beta));
  CHECK(w.gamma == doctest::Approx(w.alpha - w.beta));
  CHECK(w.gamma > 0.0);
  CHECK(w.b0 > 0.0);
  CHECK(w.eta == w.delta);
  // delta and epsilon recomputed from the definitions.
  const double g1 = std::exp(w.alpha) - 1.0;
  CHECK(w.delta == doctest::Approx(std::exp(-3.0 * w.alpha) * g1 / (4.0 * w.b0)).epsilon(1e-12));
  CHECK(w.epsilon == doctest::Approx(g1 / (32.0 * w.b0)).epsilon(1e-12));
  for (const Check& k : w.consistency()) {
    CAPTURE(k.name);
    CHECK(k.pass);
  }

  const RunReport ok = verify_witness(w, g, p);
  for (const Check& k : ok.checks) {
    CAPTURE(k.name);
    CAPTURE(k.value);
    CHECK(k.pass);
  }
  CHECK(ok.l2.size() == 3);

  const RunReport big = verify_witness(w, g, p, 100.0);
  CHECK_FALSE(big.all_pass());
  bool ii_failed = false;
  for (const Check& k : big.checks) ii_failed |= (!k.pass && (k.name.rfind("(ii)", 0) == 0 || k.name == "nonlinear run"));
  CHECK(ii_failed);

  const InstabilityWitness one = make_witness(1.0, c, d, 1, g, p);
  for (const Check& k : one.consistency()) CHECK(k.pass);
  CHECK(one.delta > w.delta);
}

TEST_CASE("witness rejects a band whose rate sits at its lower edge") {
  const SymbolParams p = derive_constants();
  const double xs = spectral_profile(p).xi_star;
  CHECK_THROWS_AS(make_witness(1.0, 0.6 * xs, xs, 3, witness_grid(), p), std::invalid_argument);
  CHECK_THROWS_AS(make_witness(0.0, xs, 1.25 * xs, 3, witness_grid(), p), std::invalid_argument);
}

TEST_CASE("fit_slope") {
  std::vector<L2Sample> s;
  for (int k = 0; k <= 100; ++k) s.push_back({0.1 * k, 2.0 * std::exp(0.3 * 0.1 * k)});
  CHECK(fit_slope(s, 0.0, 10.0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(fit_slope(s, 5.0, 10.0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK_THROWS_AS(fit_slope(s, 20.0, 30.0), std::invalid_argument);
}

TEST_CASE("report format") {
  RunReport r;
  r.title = "t";
  r.seed = 42;
  r.checks = {check_le("a", 1.0, 2.0), check_ge("b", 1.0, 2.0, "note")};
  std::ostringstream os;
  write_report(os, r);
  const std::string s = os.str();
  CHECK(s.find("PASS a: 1 <= 2\n") != std::string::npos);
  CHECK(s.find("FAIL b: 1 >= 2  (note)\n") != std::string::npos);
  CHECK(s.find("result FAIL\n") != std::string::npos);
  CHECK(s.find("seed 42\n") != std::string::npos);
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("instability demo on a zero bump stays flat") {
  SimConfig c = default_instability_config(128);
  c.initial = initial::Bump{50.0, 2.5, 0.0};
  c.t_end = 2.0;
  const DemoResult r = instability_demo(c, false);
  for (const auto& s : r.fd.l2_series) CHECK(s.l2 == 0.0);
  for (const auto& s : r.spectral.l2_series) CHECK(s.l2 == 0.0);
  CHECK(*r.report.fitted_rate == 0.0);
  CHECK(*r.report.growth_factor == 1.0);
  CHECK_FALSE(r.fd_refined.has_value());
}

TEST_CASE("instability demo is reproducible") {
  SimConfig c = default_instability_config(128);
  c.t_end = 5.0;
  const DemoResult a = instability_demo(c, false), b = instability_demo(c, false);
  CHECK(*a.report.fitted_rate == *b.report.fitted_rate);
  CHECK(a.fd.final_state().values == b.fd.final_state().values);
  CHECK(a.report.config == b.report.config);
  CHECK_THROWS_AS(([&] {
                    SimConfig f = c;
                    f.initial = initial::Flat{};
                    instability_demo(f, false);
                  }()),
                  std::invalid_argument);
}

TEST_CASE("relative state distance") {
  const SpatialGrid g = SpatialGrid::with_length(8, 8.0);
  const Field ref(g, std::vector<double>(8, 3.0 + 1.0));
  const Field a(g, std::vector<double>(8, 3.0 + 1.1));
  CHECK(relative_state_distance(a, ref, 3.0) == doctest::Approx(0.1));
}

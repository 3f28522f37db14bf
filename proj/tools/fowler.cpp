// Command-line front end. CSV goes to --out when given (report to stdout),
// otherwise CSV to stdout and the report to stderr. Subcommands that run
// checks exit 0 only when every check passes.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fowler/acceptance.hpp"
#include "fowler/config.hpp"
#include "fowler/experiments.hpp"
#include "fowler/kernel.hpp"
#include "fowler/nonlocal_op.hpp"
#include "fowler/solver_fd.hpp"
#include "fowler/solver_spectral.hpp"
#include "fowler/symbol.hpp"

namespace fs = std::filesystem;
using namespace fowler;

namespace {

// Routes CSV and report text according to --out.
struct Sink {
  std::ofstream file;
  std::ostringstream report;
  bool to_file = false;

  explicit Sink(const std::string& out) {
    if (!out.empty()) {
      if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
      file.open(out);
      if (!file) throw std::runtime_error("cannot write " + out);
      to_file = true;
    }
  }
  std::ostream& csv() { return to_file ? static_cast<std::ostream&>(file) : std::cout; }

  void finish(const std::string& out_dir) {
    (to_file ? std::cout : std::cerr) << report.str();
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      std::ofstream r(fs::path(out_dir) / "report.txt");
      r << report.str();
    }
  }
};

void write_report_file(const fs::path& dir, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream r(dir / "report.txt");
  if (!r) throw std::runtime_error("cannot write " + (dir / "report.txt").string());
  r << text;
}

std::pair<double, double> parse_band(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--band", "expected c,d");
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

int cmd_symbol(double lo, double hi, std::size_t samples, double u_phi, const std::string& out, const std::string& dir) {
  if (samples < 2 || !(hi > lo)) throw std::invalid_argument("symbol: need --samples >= 2 and --xi-max > --xi-min");
  const SymbolParams p = derive_constants(u_phi);
  Sink sink(out);
  auto& os = sink.csv();
  os << std::setprecision(17) << "xi,re_psi,im_psi,re_phi,im_phi\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const double xi = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const cplx a = psi_I(xi, p), b = phi_I(xi, p);
    os << xi << ',' << a.real() << ',' << a.imag() << ',' << b.real() << ',' << b.imag() << '\n';
  }
  const SpectralProfile prof = spectral_profile(p);
  sink.report << std::setprecision(17) << "alpha=" << prof.alpha << " xi_star=" << prof.xi_star << " xi_c=" << prof.xi_c
              << '\n';
  sink.finish(dir);
  return 0;
}

int cmd_operator_check(std::size_t n, double length, const std::string& out, const std::string& dir) {
  Sink sink(out);
  auto& os = sink.csv();
  os << std::setprecision(10) << "test,grid_n,metric,value,tolerance,pass\n";
  bool ok = true;
  for (const OperatorCheckRow& r : operator_check(n, length)) {
    os << r.test << ',' << r.grid_n << ',' << r.metric << ',' << r.value << ',' << r.tolerance << ','
       << (r.pass ? "true" : "false") << '\n';
    ok = ok && r.pass;
  }
  sink.report << "operator-check " << (ok ? "PASS" : "FAIL") << '\n';
  sink.finish(dir);
  return ok ? 0 : 1;
}

int cmd_kernel(const std::vector<double>& times, std::size_t n, double length, const std::string& out,
               const std::string& dir) {
  if (times.empty()) throw std::invalid_argument("kernel: give at least one --t");
  const SymbolParams p = derive_constants();
  const SpatialGrid g = kernel_grid(n, length);
  std::vector<KernelSnapshot> snaps;
  for (double t : times) snaps.push_back(kernel_snapshot(t, g, p));

  Sink sink(out);
  auto& os = sink.csv();
  os << "x";
  for (double t : times) os << ",K_t" << t;
  os << '\n' << std::setprecision(17);
  for (std::size_t j = 0; j < g.n; ++j) {
    os << g.x(j);
    for (const auto& s : snaps) os << ',' << s.values[j];
    os << '\n';
  }
  bool ok = true;
  for (const auto& s : snaps) {
    const double mass = s.mass();
    ok = ok && std::abs(mass - 1.0) <= 1e-8;
    sink.report << std::setprecision(12) << "min_K(" << s.t << ")=" << s.min() << '\n'
                << "mass(" << s.t << ")=" << mass << '\n'
                << "edge_over_peak(" << s.t << ")=" << s.edge_magnitude() << '\n';
  }
  sink.finish(dir);
  return ok ? 0 : 1;
}

int cmd_simulate(const std::string& config, const std::string& scheme, const std::string& out_dir) {
  SimConfig cfg = load_config(config);
  if (!scheme.empty()) cfg.scheme = parse_scheme(scheme);
  const fs::path dir = out_dir.empty() ? cfg.out_dir : fs::path(out_dir);
  std::ostringstream rep;
  rep << std::setprecision(10);
  int code = 0;
  Trajectory tr;
  try {
    tr = cfg.scheme == Scheme::fd ? run_fd(cfg) : run_mild(cfg);
  } catch (const DivergenceError& e) {
    tr = e.partial();
    rep << "diverged at step " << e.step() << " t=" << e.time() << '\n';
    code = 2;
  }
  write_trajectory(dir, tr);
  rep << "scheme=" << to_string(tr.scheme) << " n=" << cfg.grid.n << " length=" << cfg.grid.length()
      << " dt=" << tr.dt << " t_end=" << cfg.t_end << " u_phi=" << cfg.params.u_phi
      << " alpha=" << spectral_profile(cfg.params).alpha << '\n';
  for (const auto& w : tr.warnings) rep << "warning: " << w << '\n';
  if (!tr.l2_series.empty()) {
    rep << "l2_initial=" << tr.l2_series.front().l2 << " l2_final=" << tr.l2_series.back().l2 << '\n';
  }
  write_report_file(dir, rep.str());
  std::cout << rep.str();
  return code;
}

int cmd_instability(const std::string& config, const std::string& out_dir, bool refine) {
  SimConfig cfg = config.empty() ? default_instability_config() : load_config(config);
  const fs::path dir = out_dir.empty() ? cfg.out_dir : fs::path(out_dir);
  const DemoResult demo = instability_demo(cfg, refine);
  write_trajectory(dir, demo.fd);
  write_trajectory(dir / "spectral", demo.spectral);
  std::ostringstream rep;
  write_report(rep, demo.report);
  write_report_file(dir, rep.str());
  std::cout << rep.str();
  return demo.report.all_pass() ? 0 : 1;
}

int cmd_witness(double t0, const std::string& band, std::size_t N, double scale, std::size_t grid_n, double length,
                const std::string& out_dir) {
  const SymbolParams p = derive_constants();
  auto [c, d] = band.empty() ? default_witness_band(p) : parse_band(band);
  const SpatialGrid g = witness_grid(grid_n, length);
  const InstabilityWitness w = make_witness(t0, c, d, N, g, p);
  const RunReport r = verify_witness(w, g, p, scale);
  std::ostringstream rep;
  write_report(rep, r);
  if (!out_dir.empty()) write_report_file(out_dir, rep.str());
  std::cout << rep.str();
  return r.all_pass() ? 0 : 1;
}

int cmd_validate(const std::string& out_dir) {
  const std::vector<Criterion> results = run_acceptance();
  std::ostringstream rep;
  write_acceptance_detail(rep, results);
  if (!out_dir.empty()) write_report_file(out_dir, rep.str());
  write_acceptance(std::cout, results);
  for (const Criterion& c : results) {
    if (!c.pass()) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for the Fowler nonlocal conservation law"};
  app.require_subcommand(1);

  std::string out, out_dir;

  auto* sym = app.add_subcommand("symbol", "Sample psi and phi on a frequency grid");
  double xi_min = 0.0, xi_max = 0.2, u_phi = 0.0;
  std::size_t samples = 1001;
  sym->add_option("--xi-min", xi_min)->capture_default_str();
  sym->add_option("--xi-max", xi_max)->capture_default_str();
  sym->add_option("--samples", samples)->capture_default_str();
  sym->add_option("--u-phi", u_phi)->capture_default_str();
  sym->add_option("--out", out, "CSV file");
  sym->add_option("--out-dir", out_dir, "directory for report.txt");

  auto* opc = app.add_subcommand("operator-check", "Cross-check the three operator forms");
  std::size_t op_n = 1024;
  double op_len = 20.0;
  opc->add_option("--n", op_n)->capture_default_str();
  opc->add_option("--length", op_len)->capture_default_str();
  opc->add_option("--out", out, "CSV file");
  opc->add_option("--out-dir", out_dir, "directory for report.txt");

  auto* ker = app.add_subcommand("kernel", "Sample K(t, x)");
  std::vector<double> times;
  std::size_t k_n = 1024;
  double k_len = 40.0;
  ker->add_option("--t", times, "time (repeatable)")->required();
  ker->add_option("--n", k_n)->capture_default_str();
  ker->add_option("--length", k_len)->capture_default_str();
  ker->add_option("--out", out, "CSV file");
  ker->add_option("--out-dir", out_dir, "directory for report.txt");

  auto* sim = app.add_subcommand("simulate", "Run one trajectory from a config file");
  std::string config, scheme;
  sim->add_option("--config", config)->required()->check(CLI::ExistingFile);
  sim->add_option("--scheme", scheme, "fd or spectral; overrides the config");
  sim->add_option("--out-dir", out_dir, "defaults to the config's out_dir");

  auto* ins = app.add_subcommand("instability", "Flat bottom plus bump, both schemes");
  bool no_refine = false;
  ins->add_option("--config", config, "defaults to the built-in bump configuration")->check(CLI::ExistingFile);
  ins->add_option("--out-dir", out_dir);
  ins->add_flag("--no-refine", no_refine, "skip the doubled-grid FD run");

  auto* wit = app.add_subcommand("witness", "Build and verify the instability witness");
  double t0 = 1.0, scale = 1.0, w_len = 1024.0;
  std::string band;
  std::size_t N = 3, w_n = 4096;
  wit->add_option("--t0", t0)->capture_default_str();
  wit->add_option("--band", band, "c,d (default xi*,1.25xi*)");
  wit->add_option("--n", N, "number of t0 periods")->capture_default_str();
  wit->add_option("--amplitude-scale", scale)->capture_default_str();
  wit->add_option("--grid-n", w_n)->capture_default_str();
  wit->add_option("--length", w_len)->capture_default_str();
  wit->add_option("--out-dir", out_dir);

  auto* val = app.add_subcommand("validate", "Run the acceptance suite");
  val->add_option("--out-dir", out_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sym) return cmd_symbol(xi_min, xi_max, samples, u_phi, out, out_dir);
    if (*opc) return cmd_operator_check(op_n, op_len, out, out_dir);
    if (*ker) return cmd_kernel(times, k_n, k_len, out, out_dir);
    if (*sim) return cmd_simulate(config, scheme, out_dir);
    if (*ins) return cmd_instability(config, out_dir, !no_refine);
    if (*wit) return cmd_witness(t0, band, N, scale, w_n, w_len, out_dir);
    if (*val) return cmd_validate(out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

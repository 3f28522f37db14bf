#include "fowler/trajectory.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fowler {

DivergenceError::DivergenceError(std::size_t step, double t, Trajectory partial)
    : std::runtime_error("solution diverged at step " + std::to_string(step) + " (t=" + std::to_string(t) + ")"),
      step_(step),
      t_(t),
      partial_(std::move(partial)) {}

bool within_bounds(std::span<const double> v) {
  for (double x : v) {
    if (!(std::abs(x) <= kDivergenceBound)) return false;
  }
  return true;
}

StepPlan plan_steps(double t_end, double dt_max) {
  if (!(t_end > 0.0) || !(dt_max > 0.0)) throw std::invalid_argument("plan_steps: t_end and dt must be positive");
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt_max * (1.0 - 1e-12)));
  return {std::max<std::size_t>(steps, 1), t_end / static_cast<double>(std::max<std::size_t>(steps, 1))};
}

bool is_snapshot_step(std::size_t k, std::size_t steps, std::size_t every) {
  return k == 0 || k == steps || (every > 0 && k % every == 0);
}

namespace {

std::ostream& full(std::ostream& os) { return os << std::setprecision(17); }

}  // namespace

void write_l2_csv(std::ostream& os, const Trajectory& tr) {
  full(os) << "t,l2,log_l2\n";
  for (const auto& s : tr.l2_series) {
    os << s.t << ',' << s.l2 << ',' << (s.l2 > 0.0 ? std::log(s.l2) : -INFINITY) << '\n';
  }
}

void write_snapshot_csv(std::ostream& os, const Field& f) {
  full(os) << "x,u\n";
  for (std::size_t j = 0; j < f.size(); ++j) os << f.grid.x(j) << ',' << f.values[j] << '\n';
}

void write_deviation_csv(std::ostream& os, const Trajectory& tr) {
  full(os) << "t,d,l2_linear\n";
  for (const auto& s : tr.deviation) os << s.t << ',' << s.d << ',' << s.l2_linear << '\n';
}

std::string snapshot_name(double t) {
  std::ostringstream os;
  os << "snapshot_" << std::setprecision(6) << t << ".csv";
  return os.str();
}

std::vector<std::filesystem::path> write_trajectory(const std::filesystem::path& dir, const Trajectory& tr) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& name) {
    written.push_back(dir / name);
    std::ofstream f(written.back());
    if (!f) throw std::runtime_error("cannot write " + written.back().string());
    return f;
  };
  {
    auto f = open("l2.csv");
    write_l2_csv(f, tr);
  }
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    auto f = open(snapshot_name(tr.times[i]));
    write_snapshot_csv(f, tr.snapshots[i]);
  }
  if (tr.scheme == Scheme::spectral) {
    auto f = open("deviation.csv");
    write_deviation_csv(f, tr);
  }
  return written;
}

}  // namespace fowler

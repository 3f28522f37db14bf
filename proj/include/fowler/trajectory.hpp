#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fowler/config.hpp"
#include "fowler/grid.hpp"

namespace fowler {

struct L2Sample {
  double t = 0.0;
  double l2 = 0.0;  // ||u(t) - u_phi||
};

struct DeviationSample {
  double t = 0.0;
  double d = 0.0;          // ||v(t) - S(t) v0||
  double l2_linear = 0.0;  // ||S(t) v0||
};

/// Time series of one run. Snapshots hold the full state u = u_phi + v.
struct Trajectory {
  Scheme scheme = Scheme::fd;
  double dt = 0.0;
  double u_phi = 0.0;
  std::vector<double> times;  // snapshot times
  std::vector<Field> snapshots;
  std::vector<L2Sample> l2_series;
  std::vector<DeviationSample> deviation;  // spectral runs only
  std::vector<std::string> warnings;

  const Field& final_state() const { return snapshots.back(); }
  double final_l2() const { return l2_series.back().l2; }
};

/// Thrown when |u| > 1e10 or a NaN appears; carries the run up to the last
/// good step.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, double t, Trajectory partial);
  std::size_t step() const { return step_; }
  double time() const { return t_; }
  const Trajectory& partial() const { return partial_; }

 private:
  std::size_t step_;
  double t_;
  Trajectory partial_;
};

inline constexpr double kDivergenceBound = 1e10;

/// True when every value is finite and bounded by kDivergenceBound.
bool within_bounds(std::span<const double> v);

/// Number of steps and the step that lands exactly on t_end.
struct StepPlan {
  std::size_t steps = 0;
  double dt = 0.0;
};
StepPlan plan_steps(double t_end, double dt_max);

/// Whether step k of steps is recorded as a snapshot.
bool is_snapshot_step(std::size_t k, std::size_t steps, std::size_t every);

void write_l2_csv(std::ostream& os, const Trajectory& tr);
void write_snapshot_csv(std::ostream& os, const Field& f);
void write_deviation_csv(std::ostream& os, const Trajectory& tr);

/// l2.csv, snapshot_<t>.csv and, for spectral runs, deviation.csv.
std::vector<std::filesystem::path> write_trajectory(const std::filesystem::path& dir, const Trajectory& tr);

std::string snapshot_name(double t);

}  // namespace fowler

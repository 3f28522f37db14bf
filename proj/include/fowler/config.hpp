#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fowler/grid.hpp"
#include "fowler/symbol.hpp"

namespace fowler {

enum class Scheme { fd, spectral };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

namespace initial {

/// u = u_phi everywhere.
struct Flat {};

/// u = u_phi + amplitude * exp(-(x - center)^2 / (2 width^2)).
struct Bump {
  double center = 0.0;
  double width = 1.0;
  double amplitude = 0.1;
};

/// u = u_phi + delta * sqrt(2) Re w0, with w0 the unit band datum on [c, d].
struct W0Band {
  double c = 0.0;
  double d = 0.0;
  double delta = 1e-3;
};

/// Samples read from a file: one value per line, or "x,u" rows.
struct Samples {
  std::filesystem::path file;
};

}  // namespace initial

using InitialDatum = std::variant<initial::Flat, initial::Bump, initial::W0Band, initial::Samples>;

struct SimConfig {
  SpatialGrid grid;
  std::optional<double> dt;  // unset: chosen by the scheme's step policy
  double t_end = 1.0;
  Scheme scheme = Scheme::fd;
  InitialDatum initial = initial::Flat{};
  SymbolParams params;
  std::size_t snapshot_every = 0;  // 0: first and last step only
  std::filesystem::path out_dir = ".";
  Boundary boundary;
  bool wave_frame = false;  // FD only: step v = u - u_phi with flux v^2/2

  /// Throws std::invalid_argument on dt <= 0, t_end < dt, or a bump narrower than 2 dx.
  void validate() const;
};

/// Parses the flat key=value format. Blank lines and lines starting with '#'
/// are ignored. Unknown keys are rejected.
SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::filesystem::path& path);

/// Initial state u(0, x) sampled on the config grid.
Field build_initial(const SimConfig& cfg);

/// Flat bottom plus Gaussian bump: L = 100, width L/40, amplitude 0.1,
/// horizon ln(20)/alpha.
SimConfig default_instability_config(std::size_t n = 1024);

}  // namespace fowler

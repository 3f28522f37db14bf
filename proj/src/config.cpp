#include "fowler/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fowler/experiments.hpp"

namespace fowler {

std::string to_string(Scheme s) { return s == Scheme::fd ? "fd" : "spectral"; }

Scheme parse_scheme(const std::string& s) {
  if (s == "fd") return Scheme::fd;
  if (s == "spectral") return Scheme::spectral;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected fd or spectral)");
}

void SimConfig::validate() const {
  grid.validate();
  params.validate();
  if (dt && !(*dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("config: t_end must be positive");
  if (dt && t_end < *dt) throw std::invalid_argument("config: t_end must be >= dt");
  if (const auto* b = std::get_if<initial::Bump>(&initial); b && !(b->width > 2.0 * grid.dx)) {
    throw std::invalid_argument("config: bump width must exceed 2 dx");
  }
  if (scheme == Scheme::spectral && boundary.kind != BoundaryKind::periodic) {
    throw std::invalid_argument("config: the spectral scheme needs periodic boundaries");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument("config: '" + key + "' is not a number: " + v);
  return x;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x < 0 || x != std::floor(x)) throw std::invalid_argument("config: '" + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(x);
}

}  // namespace

SimConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto take = [&](const std::string& k) -> std::optional<std::string> {
    auto it = kv.find(k);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  SimConfig cfg;
  const auto n = take("n");
  if (!n) throw std::invalid_argument("config: 'n' is required");
  const std::size_t points = to_count("n", *n);

  auto length = take("length");
  if (auto dl = take("dx_or_length")) {
    if (length) throw std::invalid_argument("config: give either 'length' or 'dx_or_length'");
    length = dl;
  }
  const auto dx = take("dx");
  if (length && dx) throw std::invalid_argument("config: give either a length or dx, not both");
  if (length) {
    cfg.grid = SpatialGrid::with_length(points, to_double("length", *length));
  } else if (dx) {
    cfg.grid = SpatialGrid{points, to_double("dx", *dx), 0.0};
  } else {
    throw std::invalid_argument("config: 'length' or 'dx' is required");
  }
  if (auto o = take("origin")) cfg.grid.origin = to_double("origin", *o);

  if (auto v = take("dt")) cfg.dt = to_double("dt", *v);
  if (auto v = take("t_end")) cfg.t_end = to_double("t_end", *v);
  if (auto v = take("scheme")) cfg.scheme = parse_scheme(*v);
  if (auto v = take("snapshot_every")) cfg.snapshot_every = to_count("snapshot_every", *v);
  if (auto v = take("out_dir")) cfg.out_dir = *v;
  if (auto v = take("wave_frame")) cfg.wave_frame = (*v == "1" || *v == "true");
  const double u_phi = [&] {
    auto v = take("u_phi");
    return v ? to_double("u_phi", *v) : 0.0;
  }();
  cfg.params = derive_constants(u_phi);

  if (auto v = take("boundary")) {
    if (*v == "periodic") {
      cfg.boundary = Boundary::periodic();
    } else if (*v == "far_field") {
      cfg.boundary = Boundary::far_field(u_phi);
    } else if (*v == "linear_extension") {
      cfg.boundary = Boundary::linear_extension();
    } else {
      throw std::invalid_argument("config: unknown boundary '" + *v + "'");
    }
  }

  const std::string kind = take("initial.kind").value_or("flat");
  auto num = [&](const std::string& k, double fallback) {
    auto v = take("initial." + k);
    return v ? to_double("initial." + k, *v) : fallback;
  };
  if (kind == "flat") {
    cfg.initial = initial::Flat{};
  } else if (kind == "bump") {
    const double L = cfg.grid.length();
    cfg.initial = initial::Bump{num("center", cfg.grid.origin + 0.5 * L), num("width", L / 40.0), num("amplitude", 0.1)};
  } else if (kind == "w0_band") {
    initial::W0Band w;
    w.c = num("c", 0.0);
    w.d = num("d", 0.0);
    w.delta = num("delta", w.delta);
    cfg.initial = w;
  } else if (kind == "samples") {
    auto f = take("initial.file");
    if (!f) throw std::invalid_argument("config: initial.kind=samples needs initial.file");
    cfg.initial = initial::Samples{*f};
  } else {
    throw std::invalid_argument("config: unknown initial.kind '" + kind + "'");
  }

  if (!kv.empty()) throw std::invalid_argument("config: unknown key '" + kv.begin()->first + "'");
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  SimConfig cfg = parse_config(ss.str());
  if (auto* s = std::get_if<initial::Samples>(&cfg.initial); s && s->file.is_relative()) {
    s->file = path.parent_path() / s->file;
  }
  return cfg;
}

namespace {

std::vector<double> read_samples(const std::filesystem::path& file) {
  std::ifstream f(file);
  if (!f) throw std::runtime_error("cannot open samples file " + file.string());
  std::vector<double> out;
  std::string line;
  while (std::getline(f, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.rfind(',');
    const std::string v = comma == std::string::npos ? line : trim(line.substr(comma + 1));
    if (out.empty() && v == "u") continue;  // header
    out.push_back(to_double("sample", v));
  }
  return out;
}

}  // namespace

Field build_initial(const SimConfig& cfg) {
  const double u_phi = cfg.params.u_phi;
  const SpatialGrid& g = cfg.grid;
  Field f = std::visit(
      [&](const auto& d) -> Field {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, initial::Flat>) {
          return Field(g, std::vector<double>(g.n, u_phi), cfg.boundary);
        } else if constexpr (std::is_same_v<T, initial::Bump>) {
          return Field::sample(
              g,
              [&](double x) {
                const double z = (x - d.center) / d.width;
                return u_phi + d.amplitude * std::exp(-0.5 * z * z);
              },
              cfg.boundary);
        } else if constexpr (std::is_same_v<T, initial::W0Band>) {
          Field w = build_w0_real(d.c, d.d, g);
          for (double& v : w.values) v = u_phi + d.delta * v;
          w.boundary = cfg.boundary;
          return w;
        } else {
          std::vector<double> v = read_samples(d.file);
          if (v.size() != g.n) {
            throw std::invalid_argument("samples file has " + std::to_string(v.size()) + " values, grid has " +
                                        std::to_string(g.n));
          }
          return Field(g, std::move(v), cfg.boundary);
        }
      },
      cfg.initial);
  f.validate();
  return f;
}

SimConfig default_instability_config(std::size_t n) {
  SimConfig cfg;
  const double L = 100.0;
  cfg.grid = SpatialGrid::with_length(n, L);
  cfg.params = derive_constants();
  cfg.t_end = std::log(20.0) / spectral_profile(cfg.params).alpha;
  cfg.scheme = Scheme::fd;
  cfg.initial = initial::Bump{0.5 * L, L / 40.0, 0.1};
  cfg.snapshot_every = 0;
  cfg.boundary = Boundary::periodic();
  cfg.validate();
  return cfg;
}

}  // namespace fowler

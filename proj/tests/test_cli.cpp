#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kCli = FOWLER_CLI_PATH;

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fowler_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = kCli.string() + " " + args + " > " + stdout_file.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream f(p);
  std::string s;
  std::getline(f, s);
  return s;
}

}  // namespace

TEST_CASE("symbol writes the psi/phi table") {
  const fs::path d = scratch("symbol");
  REQUIRE(run("symbol --xi-min -0.2 --xi-max 0.2 --samples 41 --u-phi 1 --out " + (d / "s.csv").string(),
              d / "log") == 0);
  CHECK(first_line(d / "s.csv") == "xi,re_psi,im_psi,re_phi,im_phi");
  CHECK(slurp(d / "log").find("alpha=0.04598071446") != std::string::npos);
  std::ifstream f(d / "s.csv");
  std::string line;
  int rows = -1;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 41);
}

TEST_CASE("kernel writes one column per time") {
  const fs::path d = scratch("kernel");
  REQUIRE(run("kernel --t 0.1 --t 0.5 --out " + (d / "k.csv").string(), d / "log") == 0);
  CHECK(first_line(d / "k.csv") == "x,K_t0.1,K_t0.5");
  const std::string log = slurp(d / "log");
  CHECK(log.find("min_K(0.1)=-") != std::string::npos);
  CHECK(log.find("mass(0.5)=") != std::string::npos);

  CHECK(run("kernel --t 1e-5 --out " + (d / "bad.csv").string(), d / "log2") != 0);
  CHECK(slurp(d / "log2").find("Nyquist") != std::string::npos);
}

TEST_CASE("operator-check writes its table") {
  const fs::path d = scratch("opcheck");
  REQUIRE(run("operator-check --n 512 --length 20 --out " + (d / "o.csv").string(), d / "log") == 0);
  CHECK(first_line(d / "o.csv") == "test,grid_n,metric,value,tolerance,pass");
  CHECK(slurp(d / "log").find("operator-check PASS") != std::string::npos);
}

TEST_CASE("simulate writes l2 and snapshots") {
  const fs::path d = scratch("simulate");
  {
    std::ofstream f(d / "run.cfg");
    f << "n = 128\nlength = 40\nt_end = 0.2\ninitial.kind = bump\ninitial.amplitude = 0.1\nsnapshot_every = 0\n"
      << "out_dir = " << (d / "out").string() << "\n";
  }
  REQUIRE(run("simulate --config " + (d / "run.cfg").string(), d / "log") == 0);
  CHECK(first_line(d / "out" / "l2.csv") == "t,l2,log_l2");
  CHECK(first_line(d / "out" / "snapshot_0.csv") == "x,u");
  CHECK(fs::exists(d / "out" / "snapshot_0.2.csv"));
  CHECK(slurp(d / "log").find("scheme=fd") != std::string::npos);

  REQUIRE(run("simulate --scheme spectral --config " + (d / "run.cfg").string() + " --out-dir " +
                  (d / "sp").string(),
              d / "log_sp") == 0);
  CHECK(first_line(d / "sp" / "deviation.csv") == "t,d,l2_linear");

  CHECK(run("simulate --config " + (d / "missing.cfg").string(), d / "log_missing") != 0);
}

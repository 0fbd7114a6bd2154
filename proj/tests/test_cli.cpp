#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "viscowave/cli.hpp"
#include "viscowave/config.hpp"
#include "viscowave/csv.hpp"

using namespace viscowave;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "viscowave_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("config resolution: defaults, preset defaults, precedence") {
  const Config base = resolve_config("", {});
  CHECK(base.preset == "klein_gordon");
  CHECK(base.n == 63);
  CHECK(base.p == 2.0);
  CHECK(base.r == 2.0);

  const Config plap = resolve_config("", {"preset=viscous_plap"});
  CHECK(plap.p == 3.0);
  CHECK(plap.r == 3.0); // r defaults to p after the preset sets p
  CHECK(plap.gamma == 0.5);

  // overrides win over the file
  const fs::path dir = fresh_dir("config");
  const fs::path cfg_path = dir / "run.cfg";
  {
    std::ofstream out(cfg_path);
    out << "# comment\n";
    out << "preset=viscous_plap\n";
    out << "tau=2e-3\n";
    out << "epsilon=0.5\n";
  }
  const Config merged = resolve_config(cfg_path.string(), {"epsilon=0.25"});
  CHECK(merged.preset == "viscous_plap");
  CHECK(merged.tau == 2e-3);
  CHECK(merged.epsilon == 0.25);

  // r stays >= p, and an explicit r survives
  const Config with_r = resolve_config("", {"preset=viscous_plap", "r=5"});
  CHECK(with_r.r == 5.0);

  const Config alt =
      resolve_config("", {"scheme=midpoint", "selection=closest_to_previous",
                          "u1=gaussian:0.25:0.05:2"});
  CHECK(alt.scheme == Scheme::midpoint);
  CHECK(alt.selection == SelectionStrategy::closest_to_previous);
  CHECK(alt.u1.to_string() == "gaussian:0.25:0.05:2");
}

TEST_CASE("config validation errors name the offending key") {
  auto message_of = [](const std::vector<std::string>& overrides) {
    try {
      resolve_config("", overrides);
      return std::string("<no error>");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
  };
  CHECK(message_of({"njet=3"}).find("njet") != std::string::npos);
  CHECK(message_of({"tau=abc"}).find("tau") != std::string::npos);
  CHECK(message_of({"newton_tol=-1e-9"}).find("newton_tol") !=
        std::string::npos);
  CHECK(message_of({"tau=2", "b=1"}).find("tau") != std::string::npos);
  CHECK(message_of({"epsilon=1.5"}).find("epsilon") != std::string::npos);
  CHECK(message_of({"r=2", "p=3"}).find("r") != std::string::npos);
  CHECK_THROWS_AS(resolve_config("/nonexistent/path.cfg", {}), ConfigError);
}

TEST_CASE("format_g17 is stable and digest matches itself") {
  CHECK(format_g17(0.001) == "0.001");
  CHECK(format_g17(1.0) == "1");
  CHECK(format_g17(0.1) == "0.10000000000000001");
  CHECK(fnv1a_hex("abc") == fnv1a_hex("abc"));
  CHECK(fnv1a_hex("abc") != fnv1a_hex("abd"));
}

TEST_CASE("cmd_solve writes the expected files; zero preset is all zeros") {
  const fs::path dir = fresh_dir("solve_zero");
  const int rc = cli::cmd_solve(
      "", {"preset=zero", "b=0.02", "tau=1e-3"}, dir.string());
  CHECK(rc == cli::exit_ok);
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(fs::exists(dir / "energy.csv"));
  CHECK(fs::exists(dir / "manifest.txt"));

  std::ifstream in(dir / "trajectory.csv");
  std::string line;
  std::getline(in, line); // header
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ','); // step
    std::getline(ss, cell, ','); // t
    while (std::getline(ss, cell, ',')) CHECK(cell == "0");
  }
  CHECK(rows == 21);
}

TEST_CASE("cmd_solve: slack column nonnegative for klein_gordon") {
  const fs::path dir = fresh_dir("solve_kg");
  const int rc = cli::cmd_solve(
      "", {"preset=klein_gordon", "b=0.1", "tau=1e-3"}, dir.string());
  CHECK(rc == cli::exit_ok);
  std::ifstream in(dir / "energy.csv");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    const double slack = std::stod(line.substr(pos + 1));
    CHECK(slack >= -1e-12);
  }
}

TEST_CASE("cmd_solve exit codes") {
  const fs::path dir = fresh_dir("solve_err");
  CHECK(cli::cmd_solve("", {"preset=unknown_thing"}, dir.string()) ==
        cli::exit_config_error);
  CHECK(cli::cmd_solve("", {"nokey=1"}, dir.string()) ==
        cli::exit_config_error);
  // Newton cannot converge in one iteration at this tolerance
  CHECK(cli::cmd_solve("",
                       {"preset=viscous_plap", "b=0.01", "tau=1e-2",
                        "newton_tol=1e-300", "newton_max_iter=1"},
                       dir.string()) == cli::exit_solver_failure);
}

TEST_CASE("cmd_solve is byte-identical across reruns of one manifest") {
  const fs::path dir1 = fresh_dir("det_a");
  const fs::path dir2 = fresh_dir("det_b");
  const std::vector<std::string> overrides = {"preset=viscous_plap", "b=0.05",
                                              "tau=1e-3", "epsilon=0.1"};
  REQUIRE(cli::cmd_solve("", overrides, dir1.string()) == cli::exit_ok);
  REQUIRE(cli::cmd_solve("", overrides, dir2.string()) == cli::exit_ok);
  CHECK(slurp(dir1 / "trajectory.csv") == slurp(dir2 / "trajectory.csv"));
  CHECK(slurp(dir1 / "energy.csv") == slurp(dir2 / "energy.csv"));
  CHECK(slurp(dir1 / "manifest.txt") == slurp(dir2 / "manifest.txt"));
}

TEST_CASE("cmd_sweep writes sweep.csv and per-run directories") {
  const fs::path dir = fresh_dir("sweep");
  const int rc =
      cli::cmd_sweep("", {"preset=klein_gordon", "b=0.02", "tau=1e-3"},
                     {0.5, 0.1}, {}, dir.string());
  CHECK(rc == cli::exit_ok);
  CHECK(fs::exists(dir / "sweep.csv"));
  CHECK(fs::exists(dir / "summary.txt"));
  CHECK(fs::exists(dir / "run_eps0.5_r2" / "trajectory.csv"));
  CHECK(fs::exists(dir / "run_eps0.1_r2" / "energy.csv"));

  std::ifstream in(dir / "sweep.csv");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 3); // header + two runs

  // empty eps list is a configuration error
  CHECK(cli::cmd_sweep("", {}, {}, {}, dir.string()) ==
        cli::exit_config_error);
}

TEST_CASE("cmd_verify exit codes") {
  CHECK(cli::cmd_verify("zero", {"b=0.05"}) == cli::exit_ok);
  CHECK(cli::cmd_verify("viscous_plap", {"r=5", "b=0.1"}) == cli::exit_ok);
  CHECK(cli::cmd_verify("zero", {"newton_tol=-1"}) == cli::exit_config_error);
  CHECK(cli::cmd_verify("not_a_preset", {}) == cli::exit_config_error);
}

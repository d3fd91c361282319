#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "hcr/runner.hpp"

using namespace hcr;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hcr_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const fs::path& file) {
  std::ifstream in(file);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t columns(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

RunConfig quick(const fs::path& out) {
  RunConfig cfg;
  cfg.set("out", out.string());
  cfg.set("paths", "400");
  cfg.set("workers", "2");
  return cfg;
}

}  // namespace

TEST_SUITE("runner") {
  TEST_CASE("configuration") {
    RunConfig cfg;
    CHECK(cfg.integer("n") == 1);
    CHECK(cfg.list("semigroup.ts") == std::vector<double>{0.25, 0.5});
    CHECK_THROWS_AS(cfg.set("no.such.key", "1"), ConfigError);
    CHECK_THROWS_AS(cfg.set_assignment("novalue"), ConfigError);
    cfg.set_assignment("horizon = 2.5");
    CHECK(cfg.number("horizon") == 2.5);
    cfg.set("n", "0");
    CHECK_THROWS_AS(cfg.sim(), ConfigError);

    const fs::path dir = fresh_dir("config");
    std::ofstream(dir / "run.cfg") << "# comment\nseed = 17\nstep=0.002\n";
    RunConfig loaded;
    loaded.load_file(dir / "run.cfg");
    CHECK(loaded.integer("seed") == 17);
    CHECK(loaded.sim().step == 0.002);
    CHECK_THROWS_AS(loaded.load_file(dir / "missing.cfg"), IoError);
    std::ofstream(dir / "bad.cfg") << "bogus = 1\n";
    CHECK_THROWS_AS(loaded.load_file(dir / "bad.cfg"), ConfigError);
  }

  TEST_CASE("format_double round trips") {
    for (double x : {0.1, 1.0 / 3.0, 2e-300, -7.25}) CHECK(std::stod(format_double(x)) == x);
  }

  TEST_CASE("verify geometry exit codes") {
    std::ostringstream log;
    const fs::path dir = fresh_dir("geometry");
    RunConfig cfg = quick(dir);
    cfg.set("geometry.samples", "500");
    CHECK(cmd_verify_geometry(cfg, log) == kExitPass);
    CHECK(fs::exists(dir / "manifest.txt"));
    CHECK(slurp(dir / "manifest.txt").find("summary.pass = true") != std::string::npos);

    cfg.set("tol.involution", "1e-30");
    CHECK(cmd_verify_geometry(cfg, log) == kExitFailure);
    const std::string manifest = slurp(dir / "manifest.txt");
    CHECK(manifest.find("summary.pass = false") != std::string::npos);
    CHECK(manifest.find("involution") != std::string::npos);

    RunConfig missing = quick(dir / "does" / "not" / "exist");
    CHECK(cmd_verify_geometry(missing, log) == kExitIo);
  }

  TEST_CASE("verify operators") {
    std::ostringstream log;
    const fs::path dir = fresh_dir("operators");
    RunConfig cfg = quick(dir);
    CHECK(cmd_verify_operators(cfg, log) == kExitPass);
    const std::string manifest = slurp(dir / "manifest.txt");
    CHECK(manifest.find("skipped") != std::string::npos);
    CHECK(fs::exists(dir / "operator_residuals.csv"));
    cfg.set("n", "0");
    CHECK(cmd_verify_operators(cfg, log) == kExitUsage);
  }

  TEST_CASE("experiments are byte-reproducible") {
    std::ostringstream log;
    const fs::path a = fresh_dir("cayley_a"), b = fresh_dir("cayley_b");
    RunConfig ca = quick(a);
    ca.set("seed", "42");
    ca.set("workers", "1");
    RunConfig cb = quick(b);
    cb.set("seed", "42");
    cb.set("workers", "3");
    cmd_experiment(ca, "cayley", log);
    cmd_experiment(cb, "cayley", log);
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      if (entry.path().filename() == "run.log") continue;
      CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
      ++compared;
    }
    CHECK(compared >= 2);
    CHECK(cmd_experiment(ca, "nonsense", log) == kExitUsage);
  }

  TEST_CASE("simulate writes the documented columns") {
    std::ostringstream log;
    const fs::path dir = fresh_dir("simulate");
    RunConfig cfg = quick(dir);
    cfg.set("paths", "10");
    cfg.set("horizon", "0.05");
    cfg.set("sim.stride", "10");

    REQUIRE(cmd_simulate(cfg, "radial-h", log) == kExitPass);
    auto rows = lines(dir / "paths.csv");
    CHECK(rows[0] == "path,k,time,r,t,absorbed,absorption_time");
    std::set<std::string> ids;
    for (std::size_t i = 1; i < rows.size(); ++i) ids.insert(rows[i].substr(0, rows[i].find(',')));
    CHECK(ids.size() == 10);

    REQUIRE(cmd_simulate(cfg, "hproc", log) == kExitPass);
    rows = lines(dir / "paths.csv");
    CHECK(rows[0].find("absorbed,absorption_time") != std::string::npos);

    cfg.set("n", "2");
    REQUIRE(cmd_simulate(cfg, "full-h", log) == kExitPass);
    rows = lines(dir / "paths.csv");
    CHECK(columns(rows[0]) == 3 + 5 + 2);
    CHECK(columns(rows[1]) == 3 + 5 + 2);
  }
}

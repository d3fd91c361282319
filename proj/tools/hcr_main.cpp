// hcr: verification suites, pushforward experiments and path simulation.
//
//   hcr verify geometry|operators [--config F] [--seed S] [--out DIR]
//   hcr experiment cayley|kelvin|tdist|semigroup|moments|ergodic [...]
//   hcr simulate full-h|radial-h|radial-s|hproc|nproc [...]
//
// Exit codes: 0 pass, 1 test failure, 2 usage or configuration error,
// 3 I/O error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hcr/runner.hpp"

namespace {

struct Options {
  std::string config;
  std::optional<long long> seed;
  std::optional<unsigned> workers;
  std::string out;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "flat key = value configuration file");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--out", o.out, "existing output directory");
  cmd->add_option("--workers", o.workers, "worker threads (0: all cores); results do not depend on it");
  cmd->add_option("--set", o.overrides, "override a configuration key, key=value (repeatable)");
}

hcr::RunConfig build_config(const Options& o) {
  hcr::RunConfig cfg;
  if (!o.config.empty()) cfg.load_file(o.config);
  for (const auto& kv : o.overrides) cfg.set_assignment(kv);
  if (o.seed) cfg.set("seed", std::to_string(*o.seed));
  if (o.workers) cfg.set("workers", std::to_string(*o.workers));
  if (!o.out.empty()) cfg.set("out", o.out);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg / CR sphere Brownian motion: conformal pushforward checks"};
  app.require_subcommand(1);
  Options opts;
  std::string target;

  auto* verify = app.add_subcommand("verify", "deterministic identity suites");
  verify->add_option("suite", target, "geometry | operators")->required()->check(CLI::IsMember({"geometry", "operators"}));
  add_common(verify, opts);

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
  experiment->add_option("which", target, "cayley | kelvin | tdist | semigroup | moments | ergodic")
      ->required()
      ->check(CLI::IsMember({"cayley", "kelvin", "tdist", "semigroup", "moments", "ergodic"}));
  add_common(experiment, opts);

  auto* simulate = app.add_subcommand("simulate", "write path ensembles to paths.csv");
  simulate->add_option("process", target, "full-h | radial-h | radial-s | hproc | nproc")
      ->required()
      ->check(CLI::IsMember({"full-h", "radial-h", "radial-s", "hproc", "nproc"}));
  add_common(simulate, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hcr::kExitUsage;
  }

  hcr::RunConfig cfg;
  try {
    cfg = build_config(opts);
  } catch (const hcr::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return hcr::kExitIo;
  } catch (const hcr::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return hcr::kExitUsage;
  }

  if (verify->parsed()) {
    return target == "geometry" ? hcr::cmd_verify_geometry(cfg, std::cout) : hcr::cmd_verify_operators(cfg, std::cout);
  }
  if (experiment->parsed()) return hcr::cmd_experiment(cfg, target, std::cout);
  return hcr::cmd_simulate(cfg, target, std::cout);
}

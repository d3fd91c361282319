#pragma once

// Command layer behind the `hcr` executable: flat key = value
// configuration, manifest and CSV writers, and the verify / experiment /
// simulate commands. Commands return process exit codes.

#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcr/sde.hpp"

namespace hcr {

enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitUsage = 2, kExitIo = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every key has a default; files and overrides may only set known keys.
class RunConfig {
 public:
  RunConfig();

  /// Reads `key = value` lines; '#' starts a comment.
  void load_file(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);
  /// Parses "key=value".
  void set_assignment(const std::string& assignment);

  const std::string& get(const std::string& key) const;
  double number(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;
  std::vector<int> int_list(const std::string& key) const;

  /// Simulation parameters; throws ConfigError when they are invalid.
  SimConfig sim() const;
  std::filesystem::path out_dir() const { return get("out"); }

  const std::map<std::string, std::string>& values() const { return values_; }
  static const std::map<std::string, std::string>& defaults();

 private:
  std::map<std::string, std::string> values_;
};

std::string format_double(double x);

/// Flat key = value run summary. Only deterministic content goes here.
class Manifest {
 public:
  explicit Manifest(std::string command);

  void echo_config(const RunConfig& cfg);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value) { set(key, format_double(value)); }
  /// Adds test.<name>.value / .tolerance / .pass.
  void check(const std::string& name, double value, double tolerance, bool pass);

  bool all_pass() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  void write(const std::filesystem::path& file) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::string> failures_;
};

/// CSV writer with a fixed header; floats use 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(std::size_t x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(const std::string& s);
  CsvWriter& empty();
  void end_row();
  void close();

 private:
  void separator();

  std::filesystem::path file_;
  std::FILE* fp_ = nullptr;
  std::size_t columns_ = 0;
  std::size_t filled_ = 0;
};

int cmd_verify_geometry(const RunConfig& cfg, std::ostream& log);
int cmd_verify_operators(const RunConfig& cfg, std::ostream& log);
/// which: cayley | kelvin | tdist | semigroup | moments | ergodic
int cmd_experiment(const RunConfig& cfg, const std::string& which, std::ostream& log);
/// process: full-h | radial-h | radial-s | hproc | nproc
int cmd_simulate(const RunConfig& cfg, const std::string& process, std::ostream& log);

}  // namespace hcr

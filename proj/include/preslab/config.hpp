#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace preslab {

// Raised for malformed configs and bad CLI usage (exit 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for filesystem problems (exit 4).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StudyKind { Pressure, Equilibrium, Ldp, Rate, Oracle, Selfcheck };

const char* study_name(StudyKind kind);
StudyKind study_from_name(const std::string& name);  // throws ConfigError

// Flat `key = value` text, one pair per line, '#' starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

struct SystemConfig {
  std::string kind;  // "expanding" | "torus"
  int degree = 2;
  double eps = 0.0;
  std::array<std::array<int, 2>, 2> matrix{{{2, 1}, {1, 1}}};
};

struct PotentialConfig {
  std::string kind = "constant";  // "constant" | "trig" | "geometric"
  double value = 0.0;
  std::vector<std::pair<int, double>> coeffs;  // trig: basis index -> coefficient
  double t = 1.0;                              // geometric strength
};

struct RunConfig {
  StudyKind study = StudyKind::Pressure;
  SystemConfig system;
  PotentialConfig potential;
  std::vector<int> n_range;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int basis_size = 0;  // 0 = dimension default
  int bins = 16;
  // constraint / rate-table settings
  std::vector<int> obs;
  std::vector<double> lo, hi;
  double alpha_min = -1.0, alpha_max = 1.0, alpha_step = 0.05;
  double beta_max = 4.0, beta_step = 0.25;
  std::int64_t min_count = 30;
  double concentration_radius = 0.1;
  int oracle_grid = 1024;
  std::string out_dir = ".";
  std::map<std::string, std::string> raw;  // echoed into the summary
};

// Validates presence and shape of every field the study needs.
RunConfig parse_run_config(const std::map<std::string, std::string>& kv, StudyKind study);

// "a..b" (inclusive) or comma-separated values.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace preslab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dirac1d/error.hpp"
#include "dirac1d/initial.hpp"
#include "dirac1d/model.hpp"
#include "dirac1d/scattering.hpp"

namespace dirac1d {

enum class Mode { Simulate, Decay, Scatter, CheckBounds, ScalarEvolve };

std::string to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& name);

struct GridBlock {
  double L = 0;
  long N = 0;
  bool operator==(const GridBlock&) const = default;
};

struct TimeBlock {
  double dt = 0.01;
  std::optional<double> T_final;
  long cadence = 10;
  double h1_ceiling = 1e8;
  double window_lo = 10;  // decay fit window
  double window_hi = 100;
  long samples = 20;      // decay mode: log-spaced sample times for linear runs
  std::vector<double> snapshot_times;
  bool operator==(const TimeBlock&) const = default;
};

struct ScatteringBlock {
  SearchBox box;
  double grid_density = 10;  // heatmap points per unit length; 0 disables the heatmap
  double global_threshold = 0.1;
  double axis_margin = 0.02;
  bool truncation_check = true;
  bool operator==(const ScatteringBlock&) const = default;
};

struct ExperimentConfig {
  Mode mode = Mode::Simulate;
  std::optional<PotentialSpec> potential;
  std::optional<GridBlock> grid;
  std::optional<TimeBlock> time;
  std::optional<InitialProfile> initial;
  std::optional<ScatteringBlock> scattering;
  std::string output = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

struct ConfigIssue {
  std::string pointer;  // JSON pointer, e.g. "/grid/N"
  std::string message;
};

/// All schema violations found in one pass.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Parses and validates JSON config text. When `mode` is given it overrides an
/// absent "mode" key and must agree with a present one. Defaults are filled in.
ExperimentConfig parse_config(const std::string& text, std::optional<Mode> mode = std::nullopt);

/// Normalised JSON echo of a config (presets expanded, defaults explicit);
/// parse_config(config_to_json(c)) == c.
std::string config_to_json(const ExperimentConfig& config);

}  // namespace dirac1d

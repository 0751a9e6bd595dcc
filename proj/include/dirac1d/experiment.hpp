#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dirac1d/config.hpp"

namespace dirac1d {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// "v<major.minor.patch>-g<git describe>" baked in at build time.
std::string version_string();

struct ExperimentOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> errors;
  double wall_seconds = 0;
};

/// Runs one experiment and writes manifest.json plus the per-mode artifacts
/// into config.output:
///
///   simulate       trajectory.csv, final.snapshot, snapshot_<k>.snapshot
///   check-bounds   trajectory.csv, bounds.json
///   decay          decay.csv, summary.json
///   scatter        report.json, heatmap.csv
///   scalar-evolve  scalar.csv, final.snapshot
///
/// Failures are reported through the exit code and the manifest, not thrown;
/// an unwritable output directory is the only exception.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// Profile w(ξ_j) on ξ_j = -L + j 2L/N used by the scatter and scalar-evolve modes.
ScatteringProfile profile_from_config(const ExperimentConfig& config);

}  // namespace dirac1d

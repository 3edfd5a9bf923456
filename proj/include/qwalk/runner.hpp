#pragma once

// Executes a config end to end and writes its artifacts (CSV distributions,
// variance series, fit report, manifest) into an output directory.

#include <optional>
#include <string>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/experiment.hpp"

namespace qwalk {

struct RunOutputs {
  std::vector<std::string> distribution_files;  // one per recorded time
  std::string manifest_file;
  double norm_drift = 0;
  double wall_seconds = 0;
  bool norm_ok = true;  // drift <= 1e-9
};

// Runs the walk and writes dist_t<T>.csv per recorded time (plus
// dist_t<T>_xy.csv planar aggregates on the honeycomb) and manifest.json.
RunOutputs run_experiment(const ExperimentConfig& config, const std::string& out_dir);

struct VarianceOutputs {
  QuadraticFit fit;
  std::optional<FitComparison> comparison;
  std::string series_file;
  std::string fit_file;
  std::string manifest_file;
  double wall_seconds = 0;
  bool tolerance_ok = true;  // false when a requested comparison failed
};

// Runs the variance sweep, fits the quadratic law, writes variance.csv,
// fit.json, and manifest.json. A reference passed here (or carried by the
// config) turns on the comparison; tol_rel_c2 defaults to 0.05 when a
// reference is present but no tolerance is given.
VarianceOutputs variance_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                    std::optional<std::array<double, 3>> reference_override = {},
                                    std::optional<double> tol_rel_c2_override = {});

}  // namespace qwalk

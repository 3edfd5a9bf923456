#pragma once

// Position statistics, variance-growth sweeps, and quadratic-law fitting.

#include <array>
#include <optional>
#include <vector>

#include "qwalk/experiment.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// Position coordinates per metric:
//  * line: the site index n (1 coordinate);
//  * square: (n1, n2) (2 coordinates);
//  * honeycomb, index metric: the raw triple (n1, n2, n3);
//  * honeycomb, euclidean metric: planar coordinates in lattice-constant
//    units, X = (n2 - n3)/2 and Y = (n2 + n3 - 2 n1)/(2 sqrt 3). (These are
//    graphene_xy's bond-length coordinates divided by sqrt 3.)
// The metric only matters on the honeycomb; elsewhere index coordinates
// already are Cartesian with unit spacing.
//
// `variance` is the per-coordinate average spread,
//   ( E||r||^2 - ||E r||^2 ) / (number of coordinates),
// so a point mass has variance 0 on every lattice and metric.
struct Moments {
  Eigen::VectorXd mean;
  double variance = 0;
};

Moments position_moments(const Distribution& d, Metric metric);
// Streaming overload: identical numbers without materialising a Distribution.
Moments position_moments(const WalkState& s, Metric metric);

struct VarianceSeries {
  std::vector<long> t;
  std::vector<double> variance;
  Metric metric = Metric::index;
};

// Runs the configured walk and samples the variance after every
// record_stride-th step (stride 0 treated as 1); the final step is always
// sampled. t = 0 is never included.
VarianceSeries variance_series(const ExperimentConfig& config);

struct QuadraticFit {
  double c0 = 0, c1 = 0, c2 = 0;
  double rms_residual = 0;
  double r_squared = 0;
};

// Least-squares fit of variance(t) = c0 + c1 t + c2 t^2. Throws
// InsufficientSamples for fewer than 4 samples and SingularSystem when the
// times do not determine a parabola (fewer than 3 distinct values).
QuadraticFit quadratic_fit(const VarianceSeries& series);

struct FitTolerances {
  std::optional<double> rel_c0, rel_c1, rel_c2;
  std::optional<double> abs_c0, abs_c1, abs_c2;
};

struct CoefficientReport {
  double value = 0;
  double reference = 0;
  double abs_dev = 0;
  double rel_dev = 0;  // abs_dev / |reference|; inf when reference is 0
  bool pass = true;
};

struct FitComparison {
  std::array<CoefficientReport, 3> coeff;  // c0, c1, c2
  bool pass = true;
};

// Checks each coefficient against its reference under whichever tolerances
// are supplied; a coefficient with no tolerance always passes (it is still
// reported).
FitComparison compare_fit(const QuadraticFit& fit, const std::array<double, 3>& reference,
                          const FitTolerances& tol);

}  // namespace qwalk

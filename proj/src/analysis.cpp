#include "qwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qwalk/coins.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {
namespace {

constexpr double kRoot3 = 1.7320508075688772;

int metric_coord_count(LatticeKind kind, Metric metric) {
  switch (kind) {
    case LatticeKind::line:
      return 1;
    case LatticeKind::square:
      return 2;
    case LatticeKind::graphene:
      return metric == Metric::euclidean ? 2 : 3;
  }
  return 0;
}

void site_coords(LatticeKind kind, Metric metric, const Site& s, double* r) {
  if (kind == LatticeKind::graphene && metric == Metric::euclidean) {
    r[0] = (s[1] - s[2]) / 2.0;
    r[1] = (s[1] + s[2] - 2 * s[0]) / (2.0 * kRoot3);
    return;
  }
  int axes = lattice_axes(kind);
  for (int a = 0; a < axes; ++a) r[a] = s[static_cast<size_t>(a)];
}

struct MomentAccumulator {
  LatticeKind kind;
  Metric metric;
  int nc;
  double w = 0;
  double sum[3] = {0, 0, 0};
  double sum_sq = 0;

  MomentAccumulator(LatticeKind k, Metric m) : kind(k), metric(m), nc(metric_coord_count(k, m)) {}

  void add(const Site& site, double p) {
    double r[3] = {0, 0, 0};
    site_coords(kind, metric, site, r);
    w += p;
    for (int a = 0; a < nc; ++a) {
      sum[a] += p * r[a];
      sum_sq += p * r[a] * r[a];
    }
  }

  Moments finish() const {
    if (w <= 0) throw EmptyDistribution("distribution carries no probability");
    Moments m;
    m.mean.resize(nc);
    double mean_sq = 0;
    for (int a = 0; a < nc; ++a) {
      m.mean(a) = sum[a] / w;
      mean_sq += m.mean(a) * m.mean(a);
    }
    m.variance = std::max(0.0, (sum_sq / w - mean_sq) / nc);
    return m;
  }
};

}  // namespace

Moments position_moments(const Distribution& d, Metric metric) {
  MomentAccumulator acc(d.kind, metric);
  for (size_t i = 0; i < d.sites.size(); ++i) acc.add(d.sites[i], d.p[i]);
  return acc.finish();
}

Moments position_moments(const WalkState& s, Metric metric) {
  MomentAccumulator acc(s.lattice.kind, metric);
  for_each_site_probability(s, [&](const Site& site, double p) { acc.add(site, p); });
  return acc.finish();
}

VarianceSeries variance_series(const ExperimentConfig& config) {
  config.validate();
  CoinSpec coin = coin_by_name(config.coin_name, config.coin_params);
  Vector chi = Eigen::Map<const Vector>(config.chi.data(), static_cast<long>(config.chi.size()));
  WalkState s = initial_state(config.lattice, chi, config.site);
  ChiralityConvention conv = config.convention();
  Metric metric = config.effective_metric();
  long stride = config.record_stride > 0 ? config.record_stride : 1;
  VarianceSeries out;
  out.metric = metric;
  for (long t = 1; t <= config.steps; ++t) {
    advance_step(s, config.mode, coin, conv);
    if (t % stride == 0 || t == config.steps) {
      out.t.push_back(t);
      out.variance.push_back(position_moments(s, metric).variance);
    }
  }
  return out;
}

QuadraticFit quadratic_fit(const VarianceSeries& series) {
  size_t n = series.t.size();
  if (series.variance.size() != n)
    throw DimensionMismatch("variance series has mismatched t and variance lengths");
  if (n < 4)
    throw InsufficientSamples("quadratic fit needs at least 4 samples, got " + std::to_string(n));
  std::vector<long> distinct(series.t);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw SingularSystem("quadratic fit needs at least 3 distinct times, got " +
                         std::to_string(distinct.size()));
  double tmax = 1;
  for (long t : series.t) tmax = std::max(tmax, std::abs(static_cast<double>(t)));
  // Column-scaled design (u = t / tmax) keeps the normal geometry
  // well-conditioned even for runs of hundreds of steps.
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  for (size_t i = 0; i < n; ++i) {
    double u = series.t[i] / tmax;
    a(static_cast<long>(i), 0) = 1;
    a(static_cast<long>(i), 1) = u;
    a(static_cast<long>(i), 2) = u * u;
    y(static_cast<long>(i)) = series.variance[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 3) throw SingularSystem("quadratic design matrix is rank-deficient");
  Eigen::Vector3d b = qr.solve(y);
  Eigen::VectorXd resid = a * b - y;
  double ssres = resid.squaredNorm();
  double mean = y.mean();
  double sstot = (y.array() - mean).square().sum();
  QuadraticFit fit;
  fit.c0 = b(0);
  fit.c1 = b(1) / tmax;
  fit.c2 = b(2) / (tmax * tmax);
  fit.rms_residual = std::sqrt(ssres / static_cast<double>(n));
  if (sstot == 0)
    fit.r_squared = ssres < 1e-20 ? 1.0 : 0.0;
  else
    fit.r_squared = 1.0 - ssres / sstot;
  return fit;
}

FitComparison compare_fit(const QuadraticFit& fit, const std::array<double, 3>& reference,
                          const FitTolerances& tol) {
  double values[3] = {fit.c0, fit.c1, fit.c2};
  std::optional<double> rel[3] = {tol.rel_c0, tol.rel_c1, tol.rel_c2};
  std::optional<double> abs[3] = {tol.abs_c0, tol.abs_c1, tol.abs_c2};
  FitComparison out;
  for (int k = 0; k < 3; ++k) {
    CoefficientReport& r = out.coeff[static_cast<size_t>(k)];
    r.value = values[k];
    r.reference = reference[static_cast<size_t>(k)];
    r.abs_dev = std::abs(r.value - r.reference);
    if (r.reference != 0)
      r.rel_dev = r.abs_dev / std::abs(r.reference);
    else
      r.rel_dev = r.abs_dev == 0 ? 0 : std::numeric_limits<double>::infinity();
    r.pass = true;
    if (rel[k] && r.rel_dev > *rel[k]) r.pass = false;
    if (abs[k] && r.abs_dev > *abs[k]) r.pass = false;
    out.pass = out.pass && r.pass;
  }
  return out;
}

}  // namespace qwalk

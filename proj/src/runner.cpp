#include "qwalk/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "qwalk/coins.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string zero_padded(long t, long tmax) {
  std::string digits = std::to_string(tmax < 1 ? 1 : tmax);
  std::string s = std::to_string(t);
  if (s.size() < digits.size()) s.insert(0, digits.size() - s.size(), '0');
  return s;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path + "'");
}

json manifest_stub(const ExperimentConfig& config) {
  json m;
  m["schema"] = 1;
  m["config"] = json::parse(config_to_json_text(config));
  return m;
}

WalkState make_initial(const ExperimentConfig& config) {
  Vector chi = Eigen::Map<const Vector>(config.chi.data(), static_cast<long>(config.chi.size()));
  return initial_state(config.lattice, chi, config.site);
}

}  // namespace

RunOutputs run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
  config.validate();
  fs::create_directories(out_dir);
  CoinSpec coin = coin_by_name(config.coin_name, config.coin_params);
  auto t0 = std::chrono::steady_clock::now();
  RunResult result = run(make_initial(config), config.mode, coin, config.steps,
                         config.record_stride, config.convention());
  RunOutputs out;
  json outputs = json::array();
  for (const RunRecord& rec : result.records) {
    std::string base = "dist_t" + zero_padded(rec.t, config.steps);
    std::string path = (fs::path(out_dir) / (base + ".csv")).string();
    write_distribution_csv(path, rec.distribution);
    out.distribution_files.push_back(path);
    json entry = {{"t", rec.t}, {"file", base + ".csv"}};
    if (config.lattice.kind == LatticeKind::graphene) {
      std::string xy = (fs::path(out_dir) / (base + "_xy.csv")).string();
      write_euclidean_csv(xy, rec.distribution);
      entry["planar_file"] = base + "_xy.csv";
    }
    outputs.push_back(entry);
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.norm_drift = result.norm_drift;
  out.norm_ok = result.norm_drift <= 1e-9;
  json m = manifest_stub(config);
  m["kind"] = "distribution-run";
  m["outputs"] = outputs;
  m["norm_drift"] = out.norm_drift;
  m["norm_ok"] = out.norm_ok;
  m["wall_seconds"] = out.wall_seconds;
  out.manifest_file = (fs::path(out_dir) / "manifest.json").string();
  write_json_file(out.manifest_file, m);
  return out;
}

VarianceOutputs variance_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                    std::optional<std::array<double, 3>> reference_override,
                                    std::optional<double> tol_rel_c2_override) {
  config.validate();
  fs::create_directories(out_dir);
  auto t0 = std::chrono::steady_clock::now();
  VarianceSeries series = variance_series(config);
  VarianceOutputs out;
  out.fit = quadratic_fit(series);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::optional<std::array<double, 3>> reference = reference_override;
  if (!reference) reference = config.reference;
  std::optional<double> tol = tol_rel_c2_override;
  if (!tol) tol = config.tol_rel_c2;

  json jfit = {{"c0", out.fit.c0},
               {"c1", out.fit.c1},
               {"c2", out.fit.c2},
               {"rms_residual", out.fit.rms_residual},
               {"r_squared", out.fit.r_squared}};
  json report;
  report["schema"] = 1;
  report["metric"] = to_string(series.metric);
  report["samples"] = series.t.size();
  report["fit"] = jfit;

  if (reference) {
    FitTolerances tols;
    tols.rel_c2 = tol ? *tol : 0.05;
    out.comparison = compare_fit(out.fit, *reference, tols);
    out.tolerance_ok = out.comparison->pass;
    json jcmp;
    const char* names[3] = {"c0", "c1", "c2"};
    for (int k = 0; k < 3; ++k) {
      const CoefficientReport& r = out.comparison->coeff[static_cast<size_t>(k)];
      jcmp[names[k]] = {{"value", r.value},
                        {"reference", r.reference},
                        {"abs_dev", r.abs_dev},
                        {"rel_dev", r.rel_dev},
                        {"pass", r.pass}};
    }
    jcmp["tol_rel_c2"] = tols.rel_c2 ? *tols.rel_c2 : 0.0;
    jcmp["pass"] = out.comparison->pass;
    report["comparison"] = jcmp;
  }

  out.series_file = (fs::path(out_dir) / "variance.csv").string();
  write_variance_csv(out.series_file, series);
  out.fit_file = (fs::path(out_dir) / "fit.json").string();
  write_json_file(out.fit_file, report);

  json m = manifest_stub(config);
  m["kind"] = "variance-run";
  m["outputs"] = json::array({"variance.csv", "fit.json"});
  m["wall_seconds"] = out.wall_seconds;
  m["tolerance_ok"] = out.tolerance_ok;
  out.manifest_file = (fs::path(out_dir) / "manifest.json").string();
  write_json_file(out.manifest_file, m);
  return out;
}

}  // namespace qwalk

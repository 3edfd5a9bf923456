// Command-line front end: run configs, sweep variance laws, inspect coins and
// their spin Hamiltonians, and cross-check the engine against literal dense
// evolution operators.
//
// Exit codes: 0 success, 1 tolerance/cross-check failure, 2 usage or config
// error, 3 runtime failure. QWALK_THREADS caps the worker-thread count.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwalk/analysis.hpp"
#include "qwalk/coins.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/runner.hpp"

namespace {

using nlohmann::json;
using namespace qwalk;

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

json coin_json(const CoinSpec& c) {
  return {{"name", c.name}, {"dim", c.dim}, {"reference", c.reference}, {"matrix", matrix_json(c.matrix)}};
}

Metric metric_from_string(const std::string& s) {
  if (s == "index") return Metric::index;
  if (s == "euclidean") return Metric::euclidean;
  throw ConfigError("unknown metric '" + s + "' (index, euclidean)");
}

ShiftSign shift_sign_from_string(const std::string& s) {
  if (s == "paper") return ShiftSign::paper;
  if (s == "mirrored") return ShiftSign::mirrored;
  throw ConfigError("unknown shift sign '" + s + "' (paper, mirrored)");
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& shift_sign) {
  ExperimentConfig cfg = load_config(config_path);
  if (!shift_sign.empty()) cfg.shift_sign = shift_sign_from_string(shift_sign);
  RunOutputs out = run_experiment(cfg, out_dir);
  std::cout << "wrote " << out.distribution_files.size() << " distribution file(s) to " << out_dir
            << " (norm drift " << format_double(out.norm_drift) << ")\n";
  if (!out.norm_ok) {
    std::cerr << "error: norm drifted by " << format_double(out.norm_drift)
              << " (> 1e-9); the evolution is numerically broken\n";
    return 3;
  }
  return 0;
}

int cmd_variance(const std::string& config_path, const std::string& out_dir,
                 const std::vector<double>& reference, double tol_rel, const std::string& metric,
                 const std::string& shift_sign) {
  ExperimentConfig cfg = load_config(config_path);
  if (!metric.empty()) cfg.metric = metric_from_string(metric);
  if (!shift_sign.empty()) cfg.shift_sign = shift_sign_from_string(shift_sign);
  std::optional<std::array<double, 3>> ref;
  if (!reference.empty()) {
    if (reference.size() != 3) throw ConfigError("--reference needs exactly c0,c1,c2");
    ref = std::array<double, 3>{reference[0], reference[1], reference[2]};
  }
  std::optional<double> tol;
  if (tol_rel > 0) tol = tol_rel;
  VarianceOutputs out = variance_experiment(cfg, out_dir, ref, tol);
  json line = {{"c0", out.fit.c0},
               {"c1", out.fit.c1},
               {"c2", out.fit.c2},
               {"r_squared", out.fit.r_squared},
               {"rms_residual", out.fit.rms_residual}};
  if (out.comparison) {
    line["c2_rel_dev"] = out.comparison->coeff[2].rel_dev;
    line["pass"] = out.comparison->pass;
  }
  std::cout << line.dump() << '\n';
  return out.tolerance_ok ? 0 : 1;
}

int cmd_derive(const std::string& coin_name, const std::vector<double>& params) {
  CoinSpec coin = coin_by_name(coin_name, params);
  Matrix h = spin_hamiltonian(coin);
  json out;
  out["coin"] = coin_json(coin);
  out["spin_hamiltonian"] = matrix_json(h);
  out["hermiticity_residual"] = max_abs(Matrix(h - h.adjoint()));
  out["round_trip_residual"] = max_abs(Matrix(exp_minus_i_hermitian(h, 1.0) - coin.matrix));
  SpectralDecomposition sd = spectral_decompose(coin.matrix, MatrixKind::unitary);
  json phases = json::array();
  for (long k = 0; k < sd.eigenvalues.size(); ++k) phases.push_back(std::arg(sd.eigenvalues(k)));
  out["eigenphases"] = phases;
  Matrix eye = Matrix::Identity(coin.dim, coin.dim);
  bool involution = max_abs(Matrix(coin.matrix * coin.matrix - eye)) < 1e-12;
  out["involution"] = involution;
  if (involution) {
    // For S^2 = I the closed form is -pi (I - S) / 2.
    Matrix expected = -M_PI * 0.5 * (eye - coin.matrix);
    out["involution_residual"] = max_abs(Matrix(h - expected));
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_oracle_check(const std::string& config_path, long steps) {
  ExperimentConfig cfg = load_config(config_path);
  CoinSpec coin = coin_by_name(cfg.coin_name, cfg.coin_params);
  ChiralityConvention conv = cfg.convention();
  Matrix w;
  try {
    w = dense_evolution_matrix(cfg.lattice, cfg.mode, coin, conv);
  } catch (const BadParam& e) {
    throw ConfigError(e.what());
  }
  Matrix eye = Matrix::Identity(w.rows(), w.cols());
  double unitarity = max_abs(Matrix(w.adjoint() * w - eye));
  Vector chi = Eigen::Map<const Vector>(cfg.chi.data(), static_cast<long>(cfg.chi.size()));
  WalkState s = initial_state(cfg.lattice, chi, cfg.site);
  Vector flat = flatten_state(s);
  double worst = 0;
  for (long t = 1; t <= steps; ++t) {
    advance_step(s, cfg.mode, coin, conv);
    flat = (w * flat).eval();
    worst = std::max(worst, (flatten_state(s) - flat).cwiseAbs().maxCoeff());
  }
  bool ok = worst <= 1e-12 && unitarity <= 1e-12;
  json out = {{"dim", w.rows()},
              {"steps", steps},
              {"unitarity_residual", unitarity},
              {"max_deviation", worst},
              {"pass", ok}};
  std::cout << out.dump(2) << '\n';
  return ok ? 0 : 1;
}

int cmd_list_coins() {
  json out = json::array();
  for (const CoinSpec& c : registry_coins())
    out.push_back({{"name", c.name}, {"dim", c.dim}, {"reference", c.reference}});
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qwalk — coined walks on the line, the square lattice, and the honeycomb "
      "lattice, with spin-Hamiltonian derivation and variance-law fitting. "
      "Set QWALK_THREADS to cap worker threads."};
  app.require_subcommand(1);

  std::string config_path, out_dir = "qwalk_out", metric, shift_sign, coin_name;
  std::vector<double> reference, params;
  double tol_rel = 0;
  long steps = 3;

  CLI::App* run_cmd = app.add_subcommand("run", "Run a config and write distribution CSVs");
  run_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  run_cmd->add_option("--out", out_dir, "output directory (default qwalk_out)");
  run_cmd->add_option("--shift-sign", shift_sign, "override shift sign: paper|mirrored");

  CLI::App* var_cmd = app.add_subcommand("variance", "Sweep variance(t) and fit the quadratic law");
  var_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  var_cmd->add_option("--out", out_dir, "output directory (default qwalk_out)");
  var_cmd->add_option("--reference", reference, "reference coefficients c0,c1,c2")->delimiter(',');
  var_cmd->add_option("--tol-rel", tol_rel, "relative tolerance on c2 (default 0.05)");
  var_cmd->add_option("--metric", metric, "override metric: index|euclidean");
  var_cmd->add_option("--shift-sign", shift_sign, "override shift sign: paper|mirrored");

  CLI::App* derive_cmd =
      app.add_subcommand("derive", "Print a coin, its spin Hamiltonian, and consistency residuals");
  derive_cmd->add_option("--coin", coin_name, "coin name, e.g. dft4 or so2(0.3)")->required();
  derive_cmd->add_option("--param", params, "parameter(s) for parametric coins");

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle-check", "Compare the engine against a literal dense evolution operator");
  oracle_cmd->add_option("--config", config_path, "JSON experiment config (small periodic lattice)")
      ->required();
  oracle_cmd->add_option("--steps", steps, "steps to compare (default 3)");

  app.add_subcommand("list-coins", "List the built-in coin registry as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, out_dir, shift_sign);
    if (var_cmd->parsed()) return cmd_variance(config_path, out_dir, reference, tol_rel, metric, shift_sign);
    if (derive_cmd->parsed()) return cmd_derive(coin_name, params);
    if (oracle_cmd->parsed()) return cmd_oracle_check(config_path, steps);
    return cmd_list_coins();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 3;
  }
}

#include "qwalk/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

using nlohmann::json;

Metric ExperimentConfig::effective_metric() const {
  if (metric) return *metric;
  return lattice.kind == LatticeKind::graphene ? Metric::euclidean : Metric::index;
}

void ExperimentConfig::validate() const {
  if (schema != 1) throw ConfigError("unsupported schema version " + std::to_string(schema) + "; expected 1");
  try {
    lattice.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("lattice: ") + e.what());
  }
  if (mode == Mode::two_step && lattice.kind != LatticeKind::square)
    throw ConfigError("two-step mode applies to the square lattice");
  if (mode == Mode::three_step && lattice.kind != LatticeKind::graphene)
    throw ConfigError("three-step mode applies to the honeycomb lattice");
  if (lattice.kind == LatticeKind::line && mode != Mode::additive)
    throw ConfigError("the line walk supports additive stepping only");
  int cdim = chirality_dim(lattice.kind);
  if (static_cast<int>(chi.size()) != cdim)
    throw ConfigError("initial chirality vector must have " + std::to_string(cdim) +
                      " components for this lattice, got " + std::to_string(chi.size()));
  double n2 = 0;
  for (const Complex& z : chi) n2 += std::norm(z);
  if (n2 < 1e-24) throw ConfigError("initial chirality vector is numerically zero");
  if (!lattice.in_bounds(site)) throw ConfigError("initial site is outside the lattice");
  if (steps < 0) throw ConfigError("steps must be >= 0");
  if (record_stride < 0) throw ConfigError("record_stride must be >= 0");
  if (lattice.boundary == Boundary::hard_fail) {
    int axes = lattice_axes(lattice.kind);
    int m = 0;
    for (int a = 0; a < axes; ++a) m = std::max(m, std::abs(site[static_cast<size_t>(a)]));
    // One lattice hop per step, except the three-step composite whose three
    // sub-moves can each stretch the support by one.
    long per_step = mode == Mode::three_step ? 3 : 1;
    long need = m + per_step * steps + 1;
    if (lattice.extent < need)
      throw ConfigError("hard-fail lattice too small: a " + std::to_string(steps) +
                        "-step walk from this site needs extent >= " + std::to_string(need) +
                        ", got " + std::to_string(lattice.extent));
  }
  if (tol_rel_c2 && *tol_rel_c2 <= 0) throw ConfigError("tol_rel_c2 must be > 0");
}

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw ConfigError("config key '" + key + "': " + why);
}

LatticeKind parse_kind(const std::string& s) {
  if (s == "line") return LatticeKind::line;
  if (s == "square") return LatticeKind::square;
  if (s == "graphene") return LatticeKind::graphene;
  throw ConfigError("unknown lattice kind '" + s + "' (line, square, graphene)");
}

Boundary parse_boundary(const std::string& s) {
  if (s == "hard-fail") return Boundary::hard_fail;
  if (s == "periodic") return Boundary::periodic;
  throw ConfigError("unknown boundary '" + s + "' (hard-fail, periodic)");
}

Mode parse_mode(const std::string& s) {
  if (s == "additive") return Mode::additive;
  if (s == "two-step") return Mode::two_step;
  if (s == "three-step") return Mode::three_step;
  throw ConfigError("unknown mode '" + s + "' (additive, two-step, three-step)");
}

Metric parse_metric(const std::string& s) {
  if (s == "index") return Metric::index;
  if (s == "euclidean") return Metric::euclidean;
  throw ConfigError("unknown metric '" + s + "' (index, euclidean)");
}

ShiftSign parse_shift_sign(const std::string& s) {
  if (s == "paper") return ShiftSign::paper;
  if (s == "mirrored") return ShiftSign::mirrored;
  throw ConfigError("unknown shift_sign '" + s + "' (paper, mirrored)");
}

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
  }
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(j, "config",
             {"schema", "lattice", "coin", "mode", "initial", "steps", "record_stride", "metric",
              "shift_sign", "reference", "tol_rel_c2"});
  ExperimentConfig c;
  try {
    if (!j.contains("schema")) bad_key("schema", "missing");
    c.schema = j.at("schema").get<int>();

    if (!j.contains("lattice")) bad_key("lattice", "missing");
    const json& jl = j.at("lattice");
    check_keys(jl, "lattice", {"kind", "extent", "boundary", "periodic_sites"});
    c.lattice.kind = parse_kind(jl.at("kind").get<std::string>());
    c.lattice.extent = jl.at("extent").get<int>();
    if (jl.contains("boundary")) c.lattice.boundary = parse_boundary(jl.at("boundary").get<std::string>());
    if (jl.contains("periodic_sites")) c.lattice.periodic_sites = jl.at("periodic_sites").get<long>();

    if (!j.contains("coin")) bad_key("coin", "missing");
    const json& jc = j.at("coin");
    if (jc.is_string()) {
      c.coin_name = jc.get<std::string>();
    } else {
      check_keys(jc, "coin", {"name", "params"});
      c.coin_name = jc.at("name").get<std::string>();
      if (jc.contains("params")) c.coin_params = jc.at("params").get<std::vector<double>>();
    }

    if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());

    if (!j.contains("initial")) bad_key("initial", "missing");
    const json& ji = j.at("initial");
    check_keys(ji, "initial", {"chirality", "site"});
    if (!ji.contains("chirality")) bad_key("initial.chirality", "missing");
    for (const json& comp : ji.at("chirality")) {
      if (comp.is_number()) {
        c.chi.emplace_back(comp.get<double>(), 0.0);
      } else if (comp.is_array() && comp.size() == 2) {
        c.chi.emplace_back(comp.at(0).get<double>(), comp.at(1).get<double>());
      } else {
        bad_key("initial.chirality", "each component must be a number or an [re, im] pair");
      }
    }
    if (ji.contains("site")) {
      std::vector<int> sv = ji.at("site").get<std::vector<int>>();
      if (sv.size() > 3) bad_key("initial.site", "at most 3 coordinates");
      for (size_t a = 0; a < sv.size(); ++a) c.site[a] = sv[a];
    }

    if (!j.contains("steps")) bad_key("steps", "missing");
    c.steps = j.at("steps").get<long>();
    if (j.contains("record_stride")) c.record_stride = j.at("record_stride").get<long>();
    if (j.contains("metric")) c.metric = parse_metric(j.at("metric").get<std::string>());
    if (j.contains("shift_sign")) c.shift_sign = parse_shift_sign(j.at("shift_sign").get<std::string>());
    if (j.contains("reference")) {
      std::vector<double> r = j.at("reference").get<std::vector<double>>();
      if (r.size() != 3) bad_key("reference", "must be [c0, c1, c2]");
      c.reference = std::array<double, 3>{r[0], r[1], r[2]};
    }
    if (j.contains("tol_rel_c2")) c.tol_rel_c2 = j.at("tol_rel_c2").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config value: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json_text(const ExperimentConfig& c) {
  json j;
  j["schema"] = c.schema;
  j["lattice"] = {{"kind", to_string(c.lattice.kind)},
                  {"extent", c.lattice.extent},
                  {"boundary", to_string(c.lattice.boundary)}};
  if (c.lattice.periodic_sites != 0) j["lattice"]["periodic_sites"] = c.lattice.periodic_sites;
  j["coin"] = {{"name", c.coin_name}};
  if (!c.coin_params.empty()) j["coin"]["params"] = c.coin_params;
  j["mode"] = to_string(c.mode);
  json chi = json::array();
  for (const Complex& z : c.chi) chi.push_back({z.real(), z.imag()});
  int axes = lattice_axes(c.lattice.kind);
  std::vector<int> sv(c.site.begin(), c.site.begin() + axes);
  j["initial"] = {{"chirality", chi}, {"site", sv}};
  j["steps"] = c.steps;
  j["record_stride"] = c.record_stride;
  if (c.metric) j["metric"] = to_string(*c.metric);
  j["shift_sign"] = to_string(c.shift_sign);
  if (c.reference) j["reference"] = {(*c.reference)[0], (*c.reference)[1], (*c.reference)[2]};
  if (c.tol_rel_c2) j["tol_rel_c2"] = *c.tol_rel_c2;
  return j.dump(2) + "\n";
}

}  // namespace qwalk

#pragma once

// Declarative description of a walk run — everything a reproduction needs in
// one JSON-serialisable value.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/matrixcore.hpp"

namespace qwalk {

struct ExperimentConfig {
  int schema = 1;
  LatticeDescriptor lattice;
  std::string coin_name = "hadamard2";
  std::vector<double> coin_params;
  Mode mode = Mode::additive;
  std::vector<Complex> chi;   // initial chirality vector (renormalised on use)
  Site site{0, 0, 0};         // initial site
  long steps = 0;
  long record_stride = 0;     // 0: final distribution only
  std::optional<Metric> metric;  // default: euclidean on the honeycomb, index otherwise
  ShiftSign shift_sign = ShiftSign::paper;
  std::optional<std::array<double, 3>> reference;  // variance-fit reference c0,c1,c2
  std::optional<double> tol_rel_c2;                // relative tolerance on c2

  Metric effective_metric() const;
  ChiralityConvention convention() const { return ChiralityConvention{shift_sign}; }
  // Throws ConfigError on any inconsistency (mode/lattice mismatch, chirality
  // length, out-of-range site, hard-fail box too small for `steps`, ...).
  void validate() const;
};

// JSON round trip. parse_config throws ConfigError with the offending key.
ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json_text(const ExperimentConfig& c);

}  // namespace qwalk

// Run configuration: a single JSON document with dotted-path overrides,
// strict unknown-key rejection, and exact serialize/parse round-trips.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qomchaos/sweep.hpp"

namespace qomchaos {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The sweep section of a config; the executable SweepSpec is assembled from
// the whole RunConfig by make_sweep_spec.
struct SweepConfig {
  SweepAxis axis = SweepAxis::phi;
  double start = -3.14;
  double stop = 3.14;
  int count = 101;
  SweepMode mode = SweepMode::independent;
  int workers = 1;

  bool operator==(const SweepConfig&) const = default;
};

struct RunConfig {
  ModelParams model;
  State6 initial_state;           // default origin
  IntegratorSettings integrator;
  MleSettings mle;
  AnalysisSettings analysis;
  std::optional<SweepConfig> sweep;
  std::string output_dir = ".";

  bool operator==(const RunConfig&) const = default;
};

// Parse a UTF-8 JSON document, apply dotted-path overrides (e.g.
// "model.phi=-1.3") on top of the file values, fill defaults for absent
// keys, and validate everything. Throws ConfigError with a path-qualified
// message on malformed JSON, unknown keys, or invariant violations.
RunConfig parse_config(const std::string& json_text,
                       const std::vector<std::string>& overrides = {});

std::string serialize(const RunConfig& config);

SweepSpec make_sweep_spec(const RunConfig& config);  // throws if config.sweep is absent

// Built-in figure presets (fig2a, fig2b, fig2c, fig3, fig4, fig5, fig6).
// The same documents are shipped under presets/.
std::vector<std::string> preset_names();
std::string preset_json(const std::string& name);  // throws ConfigError on unknown name
RunConfig preset(const std::string& name);

}  // namespace qomchaos

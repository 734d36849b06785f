#include "qomchaos/config.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

namespace qomchaos {

using nlohmann::json;

namespace {

std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& prefix) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + join_path(prefix, key) + "'");
}

double get_number(const json& obj, const std::string& key, double fallback,
                  const std::string& prefix) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError("'" + join_path(prefix, key) + "' must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& key, int fallback, const std::string& prefix) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    throw ConfigError("'" + join_path(prefix, key) + "' must be an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& fallback,
                       const std::string& prefix) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string())
    throw ConfigError("'" + join_path(prefix, key) + "' must be a string");
  return v.get<std::string>();
}

template <class Enum>
Enum parse_enum(const json& obj, const std::string& key, Enum fallback,
                const std::vector<std::pair<std::string, Enum>>& table,
                const std::string& prefix) {
  if (!obj.contains(key)) return fallback;
  const std::string s = get_string(obj, key, "", prefix);
  for (const auto& [name, value] : table)
    if (name == s) return value;
  std::string valid;
  for (const auto& [name, _] : table) valid += (valid.empty() ? "" : ", ") + name;
  throw ConfigError("'" + join_path(prefix, key) + "' must be one of: " + valid);
}

const std::vector<std::pair<std::string, StepMethod>> kStepMethods = {
    {"rk4_fixed", StepMethod::rk4_fixed}, {"rk54_adaptive", StepMethod::rk54_adaptive}};
const std::vector<std::pair<std::string, MleMethod>> kMleMethods = {
    {"benettin_two_trajectory", MleMethod::benettin_two_trajectory},
    {"tangent_variational", MleMethod::tangent_variational}};
const std::vector<std::pair<std::string, SweepAxis>> kAxes = {
    {"j", SweepAxis::j},       {"delta_q", SweepAxis::delta_q}, {"p", SweepAxis::p},
    {"p_p", SweepAxis::p_p},   {"phi", SweepAxis::phi},         {"delta", SweepAxis::delta}};
const std::vector<std::pair<std::string, SweepMode>> kModes = {
    {"independent", SweepMode::independent}, {"warm_start", SweepMode::warm_start}};

ModelParams parse_model(const json& obj) {
  check_keys(obj, {"delta", "delta_q", "j", "p", "p_p", "phi", "kappa", "kappa_m", "kappa_q",
                   "omega_m_hz"},
             "model");
  ModelParams m;
  m.delta = get_number(obj, "delta", m.delta, "model");
  m.delta_q = get_number(obj, "delta_q", m.delta_q, "model");
  m.j = get_number(obj, "j", m.j, "model");
  m.p = get_number(obj, "p", m.p, "model");
  m.p_p = get_number(obj, "p_p", m.p_p, "model");
  m.phi = get_number(obj, "phi", m.phi, "model");
  m.kappa = get_number(obj, "kappa", m.kappa, "model");
  m.kappa_m = get_number(obj, "kappa_m", m.kappa_m, "model");
  m.kappa_q = get_number(obj, "kappa_q", m.kappa_q, "model");
  if (obj.contains("omega_m_hz") && !obj.at("omega_m_hz").is_null())
    m.omega_m_hz = get_number(obj, "omega_m_hz", 0.0, "model");
  return m;
}

State6 parse_state(const json& obj) {
  check_keys(obj, {"a_re", "a_im", "b_re", "b_im", "q_re", "q_im"}, "initial_state");
  State6 s;
  s.a_re = get_number(obj, "a_re", 0.0, "initial_state");
  s.a_im = get_number(obj, "a_im", 0.0, "initial_state");
  s.b_re = get_number(obj, "b_re", 0.0, "initial_state");
  s.b_im = get_number(obj, "b_im", 0.0, "initial_state");
  s.q_re = get_number(obj, "q_re", 0.0, "initial_state");
  s.q_im = get_number(obj, "q_im", 0.0, "initial_state");
  if (!s.finite()) throw ConfigError("initial_state components must be finite");
  return s;
}

IntegratorSettings parse_integrator(const json& obj) {
  check_keys(obj, {"method", "h", "rtol", "atol", "sample_dt", "t_end", "divergence_threshold"},
             "integrator");
  IntegratorSettings s;
  s.method = parse_enum(obj, "method", s.method, kStepMethods, "integrator");
  s.h = get_number(obj, "h", s.h, "integrator");
  s.rtol = get_number(obj, "rtol", s.rtol, "integrator");
  s.atol = get_number(obj, "atol", s.atol, "integrator");
  s.sample_dt = get_number(obj, "sample_dt", s.sample_dt, "integrator");
  s.t_end = get_number(obj, "t_end", s.t_end, "integrator");
  s.divergence_threshold =
      get_number(obj, "divergence_threshold", s.divergence_threshold, "integrator");
  return s;
}

MleSettings parse_mle(const json& obj) {
  check_keys(obj, {"method", "d0", "renorm_interval", "t_transient", "t_total"}, "mle");
  MleSettings s;
  s.method = parse_enum(obj, "method", s.method, kMleMethods, "mle");
  s.d0 = get_number(obj, "d0", s.d0, "mle");
  s.renorm_interval = get_number(obj, "renorm_interval", s.renorm_interval, "mle");
  s.t_transient = get_number(obj, "t_transient", s.t_transient, "mle");
  s.t_total = get_number(obj, "t_total", s.t_total, "mle");
  return s;
}

AnalysisSettings parse_analysis(const json& obj) {
  check_keys(obj, {"t_start", "rel_tol", "abs_tol", "prominence_factor", "fixed_point_range"},
             "analysis");
  AnalysisSettings s;
  s.t_start = get_number(obj, "t_start", s.t_start, "analysis");
  s.attractor.rel_tol = get_number(obj, "rel_tol", s.attractor.rel_tol, "analysis");
  s.attractor.abs_tol = get_number(obj, "abs_tol", s.attractor.abs_tol, "analysis");
  s.attractor.prominence_factor =
      get_number(obj, "prominence_factor", s.attractor.prominence_factor, "analysis");
  s.attractor.fixed_point_range =
      get_number(obj, "fixed_point_range", s.attractor.fixed_point_range, "analysis");
  return s;
}

SweepConfig parse_sweep(const json& obj) {
  check_keys(obj, {"axis", "start", "stop", "count", "mode", "workers"}, "sweep");
  SweepConfig s;
  s.axis = parse_enum(obj, "axis", s.axis, kAxes, "sweep");
  s.start = get_number(obj, "start", s.start, "sweep");
  s.stop = get_number(obj, "stop", s.stop, "sweep");
  s.count = get_int(obj, "count", s.count, "sweep");
  s.mode = parse_enum(obj, "mode", s.mode, kModes, "sweep");
  s.workers = get_int(obj, "workers", s.workers, "sweep");
  return s;
}

json parse_override_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);  // bare words become strings
  }
}

void apply_override(json& doc, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + spec + "' must have the form key.path=value");
  const std::string path = spec.substr(0, eq);
  const std::string value = spec.substr(eq + 1);

  json* node = &doc;
  std::istringstream tokens(path);
  std::string token;
  std::vector<std::string> parts;
  while (std::getline(tokens, token, '.')) parts.push_back(token);
  if (parts.empty()) throw ConfigError("override '" + spec + "' has an empty key path");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object())
      throw ConfigError("override path '" + path + "' crosses a non-object value");
    node = &(*node)[parts[i]];
    if (node->is_null()) *node = json::object();
  }
  if (!node->is_object())
    throw ConfigError("override path '" + path + "' crosses a non-object value");
  (*node)[parts.back()] = parse_override_value(value);
}

template <class Fn>
auto section(const json& doc, const char* key, Fn&& parse_fn) {
  if (!doc.contains(key)) return parse_fn(json::object());
  if (!doc.at(key).is_object())
    throw ConfigError(std::string("'") + key + "' must be an object");
  return parse_fn(doc.at(key));
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  for (const std::string& ov : overrides) apply_override(doc, ov);

  check_keys(doc, {"model", "initial_state", "integrator", "mle", "analysis", "sweep",
                   "output_dir"},
             "");

  RunConfig cfg;
  cfg.model = section(doc, "model", parse_model);
  cfg.initial_state = section(doc, "initial_state", parse_state);
  cfg.integrator = section(doc, "integrator", parse_integrator);
  cfg.mle = section(doc, "mle", parse_mle);
  cfg.analysis = section(doc, "analysis", parse_analysis);
  if (doc.contains("sweep") && !doc.at("sweep").is_null()) {
    if (!doc.at("sweep").is_object()) throw ConfigError("'sweep' must be an object");
    cfg.sweep = parse_sweep(doc.at("sweep"));
  }
  if (doc.contains("output_dir")) cfg.output_dir = get_string(doc, "output_dir", ".", "");

  try {
    cfg.model.validate();
    cfg.integrator.validate();
    cfg.mle.validate();
    if (!(cfg.analysis.t_start >= 0.0))
      throw std::invalid_argument("analysis.t_start must be >= 0");
    if (cfg.sweep) make_sweep_spec(cfg).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

std::string serialize(const RunConfig& c) {
  json doc;
  json& m = doc["model"];
  m["delta"] = c.model.delta;
  m["delta_q"] = c.model.delta_q;
  m["j"] = c.model.j;
  m["p"] = c.model.p;
  m["p_p"] = c.model.p_p;
  m["phi"] = c.model.phi;
  m["kappa"] = c.model.kappa;
  m["kappa_m"] = c.model.kappa_m;
  m["kappa_q"] = c.model.kappa_q;
  if (c.model.omega_m_hz) m["omega_m_hz"] = *c.model.omega_m_hz;

  json& s = doc["initial_state"];
  s["a_re"] = c.initial_state.a_re;
  s["a_im"] = c.initial_state.a_im;
  s["b_re"] = c.initial_state.b_re;
  s["b_im"] = c.initial_state.b_im;
  s["q_re"] = c.initial_state.q_re;
  s["q_im"] = c.initial_state.q_im;

  json& i = doc["integrator"];
  i["method"] = c.integrator.method == StepMethod::rk4_fixed ? "rk4_fixed" : "rk54_adaptive";
  i["h"] = c.integrator.h;
  i["rtol"] = c.integrator.rtol;
  i["atol"] = c.integrator.atol;
  i["sample_dt"] = c.integrator.sample_dt;
  i["t_end"] = c.integrator.t_end;
  i["divergence_threshold"] = c.integrator.divergence_threshold;

  json& l = doc["mle"];
  l["method"] = c.mle.method == MleMethod::benettin_two_trajectory ? "benettin_two_trajectory"
                                                                   : "tangent_variational";
  l["d0"] = c.mle.d0;
  l["renorm_interval"] = c.mle.renorm_interval;
  l["t_transient"] = c.mle.t_transient;
  l["t_total"] = c.mle.t_total;

  json& a = doc["analysis"];
  a["t_start"] = c.analysis.t_start;
  a["rel_tol"] = c.analysis.attractor.rel_tol;
  a["abs_tol"] = c.analysis.attractor.abs_tol;
  a["prominence_factor"] = c.analysis.attractor.prominence_factor;
  a["fixed_point_range"] = c.analysis.attractor.fixed_point_range;

  if (c.sweep) {
    json& w = doc["sweep"];
    w["axis"] = to_string(c.sweep->axis);
    w["start"] = c.sweep->start;
    w["stop"] = c.sweep->stop;
    w["count"] = c.sweep->count;
    w["mode"] = to_string(c.sweep->mode);
    w["workers"] = c.sweep->workers;
  }
  doc["output_dir"] = c.output_dir;
  return doc.dump(2) + "\n";
}

SweepSpec make_sweep_spec(const RunConfig& config) {
  if (!config.sweep) throw ConfigError("config has no 'sweep' section");
  SweepSpec spec;
  spec.axis = config.sweep->axis;
  spec.start = config.sweep->start;
  spec.stop = config.sweep->stop;
  spec.count = config.sweep->count;
  spec.mode = config.sweep->mode;
  spec.workers = config.sweep->workers;
  spec.base = config.model;
  spec.initial_state = config.initial_state;
  spec.integrator = config.integrator;
  spec.mle = config.mle;
  spec.analysis = config.analysis;
  return spec;
}

RunConfig preset(const std::string& name) { return parse_config(preset_json(name)); }

}  // namespace qomchaos

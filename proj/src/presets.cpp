#include "qomchaos/config.hpp"

#include <map>

namespace qomchaos {

namespace {

// Bundled scenario presets. The fig4/fig5 sweep windows are the ranges over
// which the scans show both periodic and chaotic regions. The same documents
// ship as files under presets/.
const std::map<std::string, std::string>& preset_table() {
  static const std::map<std::string, std::string> table = {
      {"fig2a", R"({
  "model": {"delta": -0.65, "delta_q": 0.5, "j": 0.2, "p": 1.4, "p_p": 0.5, "phi": -3.0},
  "integrator": {"t_end": 4000.0},
  "mle": {"t_transient": 2000.0, "t_total": 3000.0},
  "analysis": {"t_start": 2000.0}
}
)"},
      {"fig2b", R"({
  "model": {"delta": -0.65, "delta_q": 0.5, "j": 0.2, "p": 1.4, "p_p": 0.5, "phi": -2.0},
  "integrator": {"t_end": 4000.0},
  "mle": {"t_transient": 2000.0, "t_total": 3000.0},
  "analysis": {"t_start": 2000.0}
}
)"},
      {"fig2c", R"({
  "model": {"delta": -0.65, "delta_q": 0.5, "j": 0.2, "p": 1.4, "p_p": 0.5, "phi": -1.3},
  "integrator": {"t_end": 4000.0},
  "mle": {"t_transient": 2000.0, "t_total": 3000.0},
  "analysis": {"t_start": 2000.0}
}
)"},
      {"fig3", R"({
  "model": {"delta": -0.75, "delta_q": -0.75, "j": 0.2, "p": 2.4, "p_p": 0.0, "phi": 0.0},
  "integrator": {"t_end": 4000.0},
  "mle": {"t_transient": 2000.0, "t_total": 3000.0},
  "analysis": {"t_start": 2000.0},
  "sweep": {"axis": "j", "start": 0.0, "stop": 0.5, "count": 101}
}
)"},
      {"fig4", R"({
  "model": {"delta": -0.75, "delta_q": 0.5, "j": 0.2, "p": 1.4, "p_p": 0.5, "phi": 0.0},
  "integrator": {"t_end": 4000.0},
  "mle": {"t_transient": 2000.0, "t_total": 3000.0},
  "analysis": {"t_start": 2000.0},
  "sweep": {"axis": "delta_q", "start": -1.5, "stop": 1.5, "count": 101}
}
)"},
      {"fig5", R"({
  "model": {"delta": -0.65, "delta_q": 0.5, "j": 0.32, "p": 1.4, "p_p": 0.5, "phi": 0.0},
  "integrator": {"t_end": 4000.0},
  "mle": {"t_transient": 2000.0, "t_total": 3000.0},
  "analysis": {"t_start": 2000.0},
  "sweep": {"axis": "p", "start": 0.0, "stop": 3.0, "count": 101}
}
)"},
      {"fig6", R"({
  "model": {"delta": -0.65, "delta_q": 0.5, "j": 0.2, "p": 1.4, "p_p": 0.5, "phi": 0.0},
  "integrator": {"t_end": 4000.0},
  "mle": {"t_transient": 2000.0, "t_total": 3000.0},
  "analysis": {"t_start": 2000.0},
  "sweep": {"axis": "phi", "start": -3.14, "stop": 3.14, "count": 201}
}
)"},
  };
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : preset_table()) names.push_back(name);
  return names;
}

std::string preset_json(const std::string& name) {
  const auto& table = preset_table();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string valid;
    for (const auto& [n, _] : table) valid += (valid.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (available: " + valid + ")");
  }
  return it->second;
}

}  // namespace qomchaos

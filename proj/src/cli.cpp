#include "qomchaos/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qomchaos/benchmarks.hpp"
#include "qomchaos/config.hpp"
#include "qomchaos/csv.hpp"
#include "qomchaos/svg.hpp"
#include "qomchaos/validate.hpp"

namespace qomchaos {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  std::vector<std::string> overrides;
  int workers = 0;  // 0: take from config
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunConfig load_config(const CommonOptions& opt) {
  if (!opt.config_path.empty() && !opt.preset_name.empty())
    throw ConfigError("--config and --preset are mutually exclusive");
  std::string text = "{}";
  if (!opt.preset_name.empty()) text = preset_json(opt.preset_name);
  else if (!opt.config_path.empty()) text = read_file(opt.config_path);
  RunConfig cfg = parse_config(text, opt.overrides);
  if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
  if (opt.workers > 0 && cfg.sweep) cfg.sweep->workers = opt.workers;
  return cfg;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path path = fs::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + path.string() + "'");
  return out;
}

int cmd_simulate(const RunConfig& cfg) {
  const ModelSystem system{cfg.model};
  const Trajectory<6> traj = integrate(system, cfg.initial_state.to_array(), cfg.integrator);

  auto out = open_output(cfg.output_dir, "timeseries.csv");
  out << "t,a_re,a_im,b_re,b_im,q_re,q_im,x,p,n_a,n_q\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const State6 s = State6::from_array(traj.states[i]);
    const Observables o = observables(s);
    out << format_g17(traj.times[i]) << ',' << format_g17(s.a_re) << ',' << format_g17(s.a_im)
        << ',' << format_g17(s.b_re) << ',' << format_g17(s.b_im) << ',' << format_g17(s.q_re)
        << ',' << format_g17(s.q_im) << ',' << format_g17(o.x) << ',' << format_g17(o.p_mom)
        << ',' << format_g17(o.n_a) << ',' << format_g17(o.n_q) << '\n';
  }
  std::cout << "wrote " << (fs::path(cfg.output_dir) / "timeseries.csv").string() << " ("
            << traj.times.size() << " samples)\n";
  if (traj.diverged) {
    std::cerr << "orbit diverged at t = " << traj.divergence_time << "\n";
    return 2;
  }
  return 0;
}

int cmd_mle(const RunConfig& cfg, bool lorenz) {
  MleEstimate est;
  if (lorenz) {
    est = estimate_mle(LorenzSystem{}, Vec<3>{1.0, 1.0, 1.0}, cfg.mle, cfg.integrator);
  } else {
    est = estimate_mle(ModelSystem{cfg.model}, cfg.initial_state.to_array(), cfg.mle,
                       cfg.integrator);
  }

  auto out = open_output(cfg.output_dir, "mle_history.csv");
  out << "t,running_mle\n";
  for (std::size_t k = 0; k < est.history.size(); ++k)
    out << format_g17(cfg.mle.t_transient +
                      static_cast<double>(k + 1) * cfg.mle.renorm_interval)
        << ',' << format_g17(est.history[k]) << '\n';

  const MleSign sign = classify_mle(est);
  std::cout << "method=" << (est.method == MleMethod::benettin_two_trajectory
                                 ? "benettin_two_trajectory"
                                 : "tangent_variational")
            << " value=" << format_g17(est.value) << " converged="
            << (est.converged ? "true" : "false")
            << " bounded=" << (est.bounded ? "true" : "false") << "\n";
  if (!est.bounded) return 2;
  return sign == MleSign::positive ? 0 : 4;
}

int cmd_bifurcation(const RunConfig& cfg, bool svg) {
  const SweepSpec spec = make_sweep_spec(cfg);
  const std::vector<BifurcationRow> rows = run_sweep(spec);

  {
    auto out = open_output(cfg.output_dir, "peaks.csv");
    out << "param,peak_x\n";
    for (const auto& row : rows)
      for (double v : row.peaks.values)
        out << format_g17(row.param_value) << ',' << format_g17(v) << '\n';
  }
  {
    auto out = open_output(cfg.output_dir, "mle.csv");
    out << "param,mle,label,n_clusters\n";
    for (const auto& row : rows)
      out << format_g17(row.param_value) << ',' << format_g17(row.mle.value) << ','
          << to_string(row.label.kind) << ',' << row.label.n_clusters << '\n';
  }
  if (svg) {
    std::vector<double> px, py;
    for (const auto& row : rows)
      for (double v : row.peaks.values) {
        px.push_back(row.param_value);
        py.push_back(v);
      }
    const std::string axis = to_string(spec.axis);
    if (!px.empty()) {
      auto out = open_output(cfg.output_dir, "bifurcation.svg");
      out << emit_svg(px, py, PlotKind::scatter, axis, "peak x");
    }
    std::vector<double> mx, my;
    for (const auto& row : rows)
      if (std::isfinite(row.mle.value)) {
        mx.push_back(row.param_value);
        my.push_back(row.mle.value);
      }
    if (!mx.empty()) {
      auto out = open_output(cfg.output_dir, "mle.svg");
      out << emit_svg(mx, my, PlotKind::line, axis, "MLE");
    }
  }
  std::cout << "wrote peaks.csv and mle.csv for " << rows.size() << " grid points under "
            << cfg.output_dir << "\n";
  return 0;
}

int cmd_validate(bool quick) {
  const ValidateOptions opt = quick ? quick_validate_options() : ValidateOptions{};
  const auto results = run_validation(opt);
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << " measured="
              << format_g17(r.measured) << " threshold=" << format_g17(r.threshold);
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
  }
  return all_pass ? 0 : 3;
}

int cmd_plot(const std::string& input, const std::string& x_col, const std::string& y_col,
             const std::string& kind, const std::string& output) {
  const CsvTable table = read_csv_file(input);
  const std::vector<double> xs = table.numeric_column(x_col);
  const std::vector<double> ys = table.numeric_column(y_col);
  const PlotKind pk = kind == "line" ? PlotKind::line : PlotKind::scatter;
  const std::string svg = emit_svg(xs, ys, pk, x_col, y_col);
  const fs::path path(output);
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + output + "'");
  out << svg;
  std::cout << "wrote " << output << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Mean-field chaos toolkit for a qubit-coupled optomechanical cavity"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  app.add_option("--config", common.config_path, "JSON config file");
  app.add_option("--preset", common.preset_name,
                 "built-in preset (fig2a, fig2b, fig2c, fig3, fig4, fig5, fig6)");
  app.add_option("--set", common.overrides, "dotted-path override, e.g. model.phi=-1.3")
      ->type_size(1);
  app.add_option("--out", common.out_dir, "output directory (default: config output_dir)");
  app.add_option("--workers", common.workers, "worker threads for sweeps");

  auto* sim = app.add_subcommand("simulate", "integrate one trajectory and write timeseries.csv");
  auto* mle = app.add_subcommand("mle", "estimate the maximal Lyapunov exponent");
  bool lorenz = false;
  mle->add_flag("--system-lorenz,--lorenz", lorenz, "run on the built-in Lorenz system");
  auto* bif = app.add_subcommand("bifurcation", "run the configured parameter sweep");
  bool svg = false;
  bif->add_flag("--svg", svg, "also write bifurcation.svg and mle.svg");
  auto* val = app.add_subcommand("validate", "run the built-in oracle checks");
  bool quick = false;
  val->add_flag("--quick", quick, "reduced-precision profile (h = 0.1, widened Lorenz tolerance)");
  auto* plot = app.add_subcommand("plot", "render a CSV as a deterministic SVG");
  std::string plot_input, plot_x, plot_y, plot_kind = "scatter", plot_output = "plot.svg";
  plot->add_option("--input", plot_input, "input CSV file")->required();
  plot->add_option("--x", plot_x, "x column name")->required();
  plot->add_option("--y", plot_y, "y column name")->required();
  plot->add_option("--kind", plot_kind, "scatter or line")
      ->check(CLI::IsMember({"scatter", "line"}));
  plot->add_option("--output", plot_output, "output SVG path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sim) return cmd_simulate(load_config(common));
    if (*mle) return cmd_mle(load_config(common), lorenz);
    if (*bif) return cmd_bifurcation(load_config(common), svg);
    if (*val) return cmd_validate(quick);
    if (*plot) return cmd_plot(plot_input, plot_x, plot_y, plot_kind, plot_output);
  } catch (const StiffnessFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace qomchaos

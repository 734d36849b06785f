// Acceptance suite: end-to-end checks of the bundled preset scenarios plus
// the numerical oracles, one pass/fail line per criterion. Exits nonzero if
// any criterion fails. An optional argument selects criteria by number, e.g.
// ./acceptance 1,3,5
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qomchaos/benchmarks.hpp"
#include "qomchaos/cli.hpp"
#include "qomchaos/config.hpp"
#include "qomchaos/validate.hpp"

using namespace qomchaos;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void req(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v, int prec = 4) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool is_stationary(const AttractorLabel& label) {
  return label.kind == AttractorKind::fixed_point || label.kind == AttractorKind::period_n;
}

std::vector<BifurcationRow> run_preset_sweep(const std::string& name, int workers) {
  RunConfig cfg = preset(name);
  SweepSpec spec = make_sweep_spec(cfg);
  spec.workers = workers;
  return run_sweep(spec);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- criterion 1: Fig. 2 time-series classification -------------------------

Outcome criterion_fig2() {
  Outcome out;
  struct Point {
    const char* name;
    AttractorKind kind;
    int n;
  };
  const Point points[] = {{"fig2a", AttractorKind::period_n, 1},
                          {"fig2b", AttractorKind::period_n, 2},
                          {"fig2c", AttractorKind::chaotic, 0}};
  for (const Point& pt : points) {
    const RunConfig cfg = preset(pt.name);
    const auto t0 = std::chrono::steady_clock::now();
    const PointResult res =
        analyze_point(cfg.model, cfg.initial_state, cfg.integrator, cfg.mle, cfg.analysis);
    const double dt = seconds_since(t0);
    out.req(dt <= 30.0, std::string(pt.name) + " exceeded 30 s");
    out.req(res.row.label.kind == pt.kind,
            std::string(pt.name) + " -> " + to_string(res.row.label.kind) + " (want " +
                to_string(pt.kind) + ")");
    if (pt.kind == AttractorKind::period_n)
      out.req(res.row.label.n == pt.n,
              std::string(pt.name) + " period " + std::to_string(res.row.label.n) + " (want " +
                  std::to_string(pt.n) + ")");
    if (std::string(pt.name) == "fig2a")
      out.req(res.row.mle.value < 0.005, "fig2a MLE " + fmt(res.row.mle.value) + " not < 0.005");
    if (pt.kind == AttractorKind::chaotic) {
      out.req(res.row.mle.value > 0.01, "fig2c MLE " + fmt(res.row.mle.value) + " not > 0.01");
      out.req(res.row.mle.bounded, "fig2c orbit not bounded");
    }
    out.note(std::string(pt.name) + ": " + to_string(res.row.label.kind) +
             (res.row.label.kind == AttractorKind::period_n
                  ? "(" + std::to_string(res.row.label.n) + ")"
                  : "") +
             " mle=" + fmt(res.row.mle.value) + " in " + fmt(dt, 3) + "s");
  }
  return out;
}

// ---- criterion 2: Fig. 3 chaos onset in J ----------------------------------

Outcome criterion_fig3_onset() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_preset_sweep("fig3", 4);
  const double dt = seconds_since(t0);
  out.req(rows.size() == 101, "expected 101 rows");
  out.req(dt <= 600.0, "sweep exceeded 10 min (" + fmt(dt, 3) + "s)");

  double first_chaotic = -1.0;
  for (const auto& row : rows) {
    if (row.label.kind == AttractorKind::chaotic && first_chaotic < 0.0)
      first_chaotic = row.param_value;
    if (row.param_value <= 0.30 + 1e-9) {
      out.req(row.mle.value <= 0.005,
              "J=" + fmt(row.param_value) + " MLE " + fmt(row.mle.value) + " > 0.005");
      out.req(is_stationary(row.label),
              "J=" + fmt(row.param_value) + " not stationary (" + to_string(row.label.kind) + ")");
    }
  }
  out.req(first_chaotic >= 0.30 && first_chaotic <= 0.36,
          "first chaotic J=" + fmt(first_chaotic) + " outside [0.30, 0.36]");
  out.note("first chaotic J=" + fmt(first_chaotic) + ", sweep " + fmt(dt, 3) + "s");
  return out;
}

// ---- criterion 3: P=0 linear limit ------------------------------------------

Outcome criterion_linear_limit() {
  Outcome out;
  ModelParams params;
  params.p = 0.0;
  const State6 exact = linear_steady_state(params);

  IntegratorSettings is;
  is.t_end = 200.0;
  const ModelSystem system{params};
  const auto traj = integrate(system, Vec6{}, is);
  double err = 0.0;
  for (int i = 0; i < 6; ++i)
    err = std::max(err, std::abs(traj.states.back()[i] - exact.to_array()[i]));
  out.req(!traj.diverged && err <= 1e-6, "steady-state error " + fmt(err) + " > 1e-6");

  MleSettings bs;
  bs.method = MleMethod::benettin_two_trajectory;
  const MleEstimate ben = mle_benettin(system, Vec6{}, bs, IntegratorSettings{});
  out.req(ben.value <= 0.005, "benettin " + fmt(ben.value) + " > 0.005");

  MleSettings ts;
  ts.t_total = 10000.0;
  const MleEstimate tan = mle_tangent(system, Vec6{}, ts, IntegratorSettings{});
  out.req(tan.value <= 0.005, "tangent " + fmt(tan.value) + " > 0.005");
  out.req(std::abs(tan.value - (-5e-4)) <= 2e-4,
          "tangent " + fmt(tan.value) + " not within 2e-4 of -5e-4");
  out.note("steady-state err=" + fmt(err) + ", benettin=" + fmt(ben.value) +
           ", tangent=" + fmt(tan.value));
  return out;
}

// ---- criterion 4: MLE calibration and cross-method agreement ----------------

Outcome criterion_mle_calibration() {
  Outcome out;
  {
    LorenzSystem lorenz;
    MleSettings ms;
    ms.t_transient = 500.0;
    ms.t_total = 5000.0;
    const Vec<3> y0 = {1.0, 1.0, 1.0};
    ms.method = MleMethod::tangent_variational;
    const MleEstimate tan = mle_tangent(lorenz, y0, ms, IntegratorSettings{});
    ms.method = MleMethod::benettin_two_trajectory;
    const MleEstimate ben = mle_benettin(lorenz, y0, ms, IntegratorSettings{});
    out.req(std::abs(tan.value - kLorenzReferenceMle) <= 0.02,
            "lorenz tangent " + fmt(tan.value) + " off 0.9056 by > 0.02");
    out.req(std::abs(ben.value - kLorenzReferenceMle) <= 0.02,
            "lorenz benettin " + fmt(ben.value) + " off 0.9056 by > 0.02");
    out.note("lorenz tangent=" + fmt(tan.value) + " benettin=" + fmt(ben.value));
  }

  // 10 deterministic pseudo-random points inside the figure parameter ranges
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ModelParams> points;
  for (int i = 0; i < 10; ++i) {
    ModelParams p;
    p.delta = -0.75 + 0.10 * u(rng);
    p.delta_q = -1.5 + 3.0 * u(rng);
    p.j = 0.5 * u(rng);
    p.p = 3.0 * u(rng);
    p.p_p = 0.5 * u(rng);
    p.phi = -3.14 + 6.28 * u(rng);
    points.push_back(p);
  }

  struct Pair {
    double ben = 0, tan = 0;
    bool bounded = true;
  };
  std::vector<Pair> results(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      const ModelSystem system{points[i]};
      MleSettings ms;
      ms.t_transient = 2000.0;
      ms.t_total = 3000.0;
      ms.method = MleMethod::benettin_two_trajectory;
      const MleEstimate a = mle_benettin(system, Vec6{}, ms, IntegratorSettings{});
      ms.method = MleMethod::tangent_variational;
      const MleEstimate b = mle_tangent(system, Vec6{}, ms, IntegratorSettings{});
      results[i] = {a.value, b.value, a.bounded && b.bounded};
    }
  };
  {
    std::vector<std::thread> pool;
    for (int w = 0; w < 4; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].bounded) continue;
    const double tol = std::max(0.05 * std::abs(results[i].tan), 0.005);
    const double diff = std::abs(results[i].ben - results[i].tan);
    worst = std::max(worst, diff - tol);
    out.req(diff <= tol, "point " + std::to_string(i) + ": |ben-tan|=" + fmt(diff) + " > " +
                             fmt(tol) + " (ben=" + fmt(results[i].ben) +
                             " tan=" + fmt(results[i].tan) + ")");
  }
  out.note("worst cross-method excess " + fmt(worst));
  return out;
}

// ---- criteria 5 and 6: Jacobian FD and RK4 order from the built-in suite ----

Outcome criterion_from_validation(const std::string& check_name) {
  static const std::vector<CheckResult> results = run_validation(ValidateOptions{});
  Outcome out;
  for (const auto& r : results)
    if (r.name == check_name) {
      out.req(r.pass, check_name + " failed");
      out.note("measured " + fmt(r.measured, 6));
      return out;
    }
  out.req(false, "check '" + check_name + "' not found");
  return out;
}

// ---- criterion 7: worker-count determinism ----------------------------------

Outcome criterion_determinism() {
  Outcome out;
  const fs::path base = fs::temp_directory_path() / "qomchaos_acceptance_c7";
  std::error_code ec;
  fs::remove_all(base, ec);
  const std::vector<std::string> shrink = {
      "--set", "integrator.t_end=300",  "--set", "analysis.t_start=150",
      "--set", "mle.t_transient=150",   "--set", "mle.t_total=150",
      "--set", "sweep.count=101"};
  for (int workers : {1, 4}) {
    std::vector<std::string> args = {"--preset", "fig6"};
    args.insert(args.end(), shrink.begin(), shrink.end());
    args.insert(args.end(), {"--workers", std::to_string(workers), "--out",
                             (base / ("w" + std::to_string(workers))).string(), "bifurcation"});
    std::ostringstream sink;  // keep the per-criterion output to one line
    auto* saved = std::cout.rdbuf(sink.rdbuf());
    const int code = run_cli(args);
    std::cout.rdbuf(saved);
    out.req(code == 0, "bifurcation exit code " + std::to_string(code));
  }
  const std::string peaks1 = slurp(base / "w1" / "peaks.csv");
  const std::string peaks4 = slurp(base / "w4" / "peaks.csv");
  const std::string mle1 = slurp(base / "w1" / "mle.csv");
  const std::string mle4 = slurp(base / "w4" / "mle.csv");
  out.req(!peaks1.empty() && peaks1 == peaks4, "peaks.csv differs between workers=1 and 4");
  out.req(!mle1.empty() && mle1 == mle4, "mle.csv differs between workers=1 and 4");
  out.note("peaks.csv " + std::to_string(peaks1.size()) + " bytes, byte-identical");
  fs::remove_all(base, ec);
  return out;
}

// ---- criterion 8: Figs. 4-6 qualitative structure ----------------------------

Outcome criterion_fig456() {
  Outcome out;
  for (const char* name : {"fig4", "fig5"}) {
    const auto rows = run_preset_sweep(name, 4);
    int chaotic = 0, periodic = 0;
    for (const auto& row : rows) {
      chaotic += row.label.kind == AttractorKind::chaotic;
      periodic += row.label.kind == AttractorKind::period_n;
    }
    out.req(chaotic > 0, std::string(name) + " has no chaotic rows");
    out.req(periodic > 0, std::string(name) + " has no period_n rows");
    out.note(std::string(name) + ": " + std::to_string(chaotic) + " chaotic, " +
             std::to_string(periodic) + " periodic");
  }

  const auto rows = run_preset_sweep("fig6", 4);
  int p1 = 0, pn = 0, chaotic = 0;
  auto near_has = [&](double phi, AttractorKind kind, int n) {
    for (const auto& row : rows)
      if (std::abs(row.param_value - phi) <= 0.1 && row.label.kind == kind &&
          (n == 0 || row.label.n == n))
        return true;
    return false;
  };
  for (const auto& row : rows) {
    if (row.label.kind == AttractorKind::period_n) {
      if (row.label.n == 1) ++p1;
      else ++pn;
    }
    chaotic += row.label.kind == AttractorKind::chaotic;
  }
  out.req(p1 > 0, "fig6 has no period_n(1) rows");
  out.req(pn > 0, "fig6 has no period_n(>=2) rows");
  out.req(chaotic > 0, "fig6 has no chaotic rows");
  out.req(near_has(-3.0, AttractorKind::period_n, 1), "no period-1 near phi=-3");
  out.req(near_has(-2.0, AttractorKind::period_n, 2), "no period-2 near phi=-2");
  out.req(near_has(-1.3, AttractorKind::chaotic, 0), "no chaos near phi=-1.3");
  out.note("fig6: " + std::to_string(p1) + " period-1, " + std::to_string(pn) +
           " period-n, " + std::to_string(chaotic) + " chaotic");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "fig2-classification", criterion_fig2},
      {2, "fig3-chaos-onset", criterion_fig3_onset},
      {3, "linear-limit-oracle", criterion_linear_limit},
      {4, "mle-calibration", criterion_mle_calibration},
      {5, "jacobian-correctness", [] { return criterion_from_validation("jacobian_fd"); }},
      {6, "integrator-order", [] { return criterion_from_validation("rk4_order"); }},
      {7, "parallel-determinism", criterion_determinism},
      {8, "fig456-structure", criterion_fig456},
  };

  std::string filter = argc > 1 ? argv[1] : "";
  auto selected = [&](int id) {
    if (filter.empty()) return true;
    std::istringstream ss(filter);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (std::stoi(tok) == id) return true;
    return false;
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    failures += out.pass ? 0 : 1;
    std::printf("[%s] criterion %d (%s): %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all criteria passed\n");
  return failures == 0 ? 0 : 1;
}

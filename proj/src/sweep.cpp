#include "qomchaos/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qomchaos {

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::j: return "j";
    case SweepAxis::delta_q: return "delta_q";
    case SweepAxis::p: return "p";
    case SweepAxis::p_p: return "p_p";
    case SweepAxis::phi: return "phi";
    case SweepAxis::delta: return "delta";
  }
  return "phi";
}

std::string to_string(SweepMode mode) {
  return mode == SweepMode::independent ? "independent" : "warm_start";
}

void SweepSpec::validate() const {
  if (count < 2) throw std::invalid_argument("sweep.count must be >= 2");
  if (start == stop) throw std::invalid_argument("sweep.start must differ from sweep.stop");
  if (workers < 1) throw std::invalid_argument("sweep.workers must be >= 1");
  base.validate();
  integrator.validate();
  mle.validate();
  if (!(analysis.t_start >= 0.0))
    throw std::invalid_argument("analysis.t_start must be >= 0");
  // Every axis value must respect the model invariants.
  for (double v : grid(start, stop, count)) with_axis(base, axis, v).validate();
}

std::vector<double> grid(double start, double stop, int count) {
  if (count < 2) throw std::invalid_argument("grid: count must be >= 2");
  std::vector<double> values(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (int k = 0; k < count; ++k) values[k] = start + static_cast<double>(k) * step;
  values.front() = start;
  values.back() = stop;
  return values;
}

ModelParams with_axis(const ModelParams& base, SweepAxis axis, double value) {
  ModelParams p = base;
  switch (axis) {
    case SweepAxis::j: p.j = value; break;
    case SweepAxis::delta_q: p.delta_q = value; break;
    case SweepAxis::p: p.p = value; break;
    case SweepAxis::p_p: p.p_p = value; break;
    case SweepAxis::phi: p.phi = value; break;
    case SweepAxis::delta: p.delta = value; break;
  }
  return p;
}

PointResult analyze_point(const ModelParams& params, const State6& y0,
                          const IntegratorSettings& integrator, const MleSettings& mle,
                          const AnalysisSettings& analysis) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();

  PointResult out;
  const ModelSystem system{params};
  const Trajectory<6> traj = integrate(system, y0.to_array(), integrator);
  out.final_state = State6::from_array(traj.states.back());

  if (traj.diverged) {
    out.row.label.kind = AttractorKind::unbounded;
    out.row.mle.value = std::numeric_limits<double>::quiet_NaN();
    out.row.mle.bounded = false;
  } else {
    std::vector<double> wt, wx;
    double max_abs_x = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      if (traj.times[i] < analysis.t_start) continue;
      wt.push_back(traj.times[i]);
      wx.push_back(position_x(traj.states[i]));
      max_abs_x = std::max(max_abs_x, std::abs(wx.back()));
    }
    if (wx.size() >= 3) {
      out.row.peaks =
          find_peaks(wt, wx, analysis.attractor.prominence_factor * max_abs_x);
    }
    out.row.mle = estimate_mle(system, y0.to_array(), mle, integrator);
    out.row.label =
        classify(out.row.peaks, signal_stats(wx), out.row.mle, false, analysis.attractor);
  }

  out.row.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

namespace {

bool labels_equal(const AttractorLabel& a, const AttractorLabel& b) {
  return a.kind == b.kind && a.n == b.n;
}

std::vector<BifurcationRow> run_independent(const SweepSpec& spec,
                                            const std::vector<double>& values) {
  std::vector<BifurcationRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      PointResult res = analyze_point(with_axis(spec.base, spec.axis, values[i]),
                                      spec.initial_state, spec.integrator, spec.mle,
                                      spec.analysis);
      res.row.param_value = values[i];
      rows[i] = std::move(res.row);
    }
  };
  const int n_workers = std::min<int>(spec.workers, static_cast<int>(values.size()));
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::vector<BifurcationRow> run_warm_start(const SweepSpec& spec,
                                           const std::vector<double>& values) {
  std::vector<BifurcationRow> rows(values.size());
  State6 seed = spec.initial_state;
  for (std::size_t i = 0; i < values.size(); ++i) {
    PointResult res = analyze_point(with_axis(spec.base, spec.axis, values[i]), seed,
                                    spec.integrator, spec.mle, spec.analysis);
    res.row.param_value = values[i];
    rows[i] = std::move(res.row);
    if (res.final_state.finite()) seed = res.final_state;  // keep last good seed past divergence
  }
  return rows;
}

}  // namespace

std::vector<BifurcationRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> values = grid(spec.start, spec.stop, spec.count);
  std::vector<BifurcationRow> rows = spec.mode == SweepMode::independent
                                         ? run_independent(spec, values)
                                         : run_warm_start(spec, values);
  std::stable_sort(rows.begin(), rows.end(), [](const BifurcationRow& a, const BifurcationRow& b) {
    return a.param_value < b.param_value;
  });
  return rows;
}

ModeComparison compare_modes(const SweepSpec& spec) {
  SweepSpec ind = spec;
  ind.mode = SweepMode::independent;
  SweepSpec warm = spec;
  warm.mode = SweepMode::warm_start;
  const auto rows_i = run_sweep(ind);
  const auto rows_w = run_sweep(warm);

  ModeComparison cmp;
  cmp.points = rows_i.size();
  for (std::size_t k = 0; k < rows_i.size(); ++k)
    if (!labels_equal(rows_i[k].label, rows_w[k].label))
      cmp.disagreements.push_back({rows_i[k].param_value, rows_i[k].label, rows_w[k].label});
  cmp.agreement = cmp.points == 0
                      ? 1.0
                      : 1.0 - static_cast<double>(cmp.disagreements.size()) /
                                  static_cast<double>(cmp.points);
  return cmp;
}

}  // namespace qomchaos

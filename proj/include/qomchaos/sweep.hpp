// One-parameter bifurcation/MLE scans: per-point pipeline (integrate, peak
// extraction, MLE, classification) and a worker pool over the grid.
#pragma once

#include <string>
#include <vector>

#include "qomchaos/attractor.hpp"
#include "qomchaos/model.hpp"

namespace qomchaos {

enum class SweepAxis { j, delta_q, p, p_p, phi, delta };
enum class SweepMode { independent, warm_start };

std::string to_string(SweepAxis axis);
std::string to_string(SweepMode mode);

// Analysis window: samples with t >= t_start feed the peak detector.
struct AnalysisSettings {
  double t_start = 2000.0;
  AttractorSettings attractor;

  bool operator==(const AnalysisSettings&) const = default;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::phi;
  double start = -3.14;
  double stop = 3.14;
  int count = 101;
  SweepMode mode = SweepMode::independent;
  int workers = 1;
  ModelParams base;
  State6 initial_state;
  IntegratorSettings integrator;
  MleSettings mle;
  AnalysisSettings analysis;

  void validate() const;
};

struct BifurcationRow {
  double param_value = 0.0;
  PeakSet peaks;
  MleEstimate mle;
  AttractorLabel label;
  double wall_time_s = 0.0;
};

// Uniform inclusive grid value_k = start + k*(stop-start)/(count-1), with
// exact endpoints. Descending grids are allowed.
std::vector<double> grid(double start, double stop, int count);

ModelParams with_axis(const ModelParams& base, SweepAxis axis, double value);

// The per-point pipeline shared by sweeps and the CLI: integrate from y0 over
// [0, t_end], extract peaks from the window t >= analysis.t_start with
// min_prominence = prominence_factor * max|x|, estimate the MLE from y0 with
// the configured method, classify. Divergence yields an unbounded row (the
// MLE run is skipped).
struct PointResult {
  BifurcationRow row;
  State6 final_state;  // state at the last emitted sample (warm-start seed)
};

PointResult analyze_point(const ModelParams& params, const State6& y0,
                          const IntegratorSettings& integrator, const MleSettings& mle,
                          const AnalysisSettings& analysis);

// Scan the grid. Independent mode starts every point from spec.initial_state
// and distributes points over spec.workers threads; results do not depend on
// the worker count. Warm-start mode runs serially in grid order, seeding each
// point with the previous point's final state. Rows are sorted by
// param_value; divergent points appear as unbounded rows.
std::vector<BifurcationRow> run_sweep(const SweepSpec& spec);

struct ModeComparison {
  struct Disagreement {
    double param_value;
    AttractorLabel independent;
    AttractorLabel warm_start;
  };
  std::size_t points = 0;
  double agreement = 1.0;  // fraction of rows with equal labels
  std::vector<Disagreement> disagreements;
};

// Run both modes and report rows whose labels differ (kind and period n).
ModeComparison compare_modes(const SweepSpec& spec);

}  // namespace qomchaos

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <chrono>
#include <cstring>
#include <thread>

#include "qomchaos/sweep.hpp"

using namespace qomchaos;

namespace {

// Cheap settings so a whole sweep runs in well under a second per point.
SweepSpec tiny_spec() {
  SweepSpec spec;
  spec.axis = SweepAxis::phi;
  spec.start = -3.0;
  spec.stop = 3.0;
  spec.count = 11;
  spec.integrator.t_end = 50.0;
  spec.mle.t_transient = 10.0;
  spec.mle.t_total = 30.0;
  spec.analysis.t_start = 25.0;
  return spec;
}

bool rows_identical(const std::vector<BifurcationRow>& a, const std::vector<BifurcationRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].param_value != b[i].param_value) return false;
    if (a[i].peaks.values != b[i].peaks.values) return false;
    if (a[i].peaks.times != b[i].peaks.times) return false;
    const bool nan_equal = std::isnan(a[i].mle.value) && std::isnan(b[i].mle.value);
    if (!nan_equal && a[i].mle.value != b[i].mle.value) return false;
    if (a[i].mle.history != b[i].mle.history) return false;
    if (a[i].label.kind != b[i].label.kind) return false;
    if (a[i].label.n != b[i].label.n) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("grid: inclusive uniform spacing with exact endpoints") {
  const auto g = grid(0.0, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.25);
  CHECK(g[2] == 0.5);
  CHECK(g[3] == 0.75);
  CHECK(g[4] == 1.0);
}

TEST_CASE("grid: descending two-point grid") {
  const auto g = grid(1.0, 0.0, 2);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == 1.0);
  CHECK(g[1] == 0.0);
}

TEST_CASE("grid: fig6-style spacing") {
  const auto g = grid(-3.14, 3.14, 201);
  REQUIRE(g.size() == 201);
  CHECK(g.front() == -3.14);
  CHECK(g.back() == 3.14);
  CHECK(g[1] - g[0] == doctest::Approx(0.0314).epsilon(1e-12));
  CHECK(g[200] - g[199] == doctest::Approx(0.0314).epsilon(1e-12));
}

TEST_CASE("grid: count below 2 is rejected") {
  CHECK_THROWS_AS(grid(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("with_axis sets exactly one field") {
  const ModelParams base;
  CHECK(with_axis(base, SweepAxis::j, 0.4).j == 0.4);
  CHECK(with_axis(base, SweepAxis::delta_q, -1.0).delta_q == -1.0);
  CHECK(with_axis(base, SweepAxis::p, 2.0).p == 2.0);
  CHECK(with_axis(base, SweepAxis::p_p, 0.1).p_p == 0.1);
  CHECK(with_axis(base, SweepAxis::phi, 1.0).phi == 1.0);
  CHECK(with_axis(base, SweepAxis::delta, -0.7).delta == -0.7);
  CHECK(with_axis(base, SweepAxis::j, 0.4).p == base.p);
}

TEST_CASE("SweepSpec validation") {
  SweepSpec spec = tiny_spec();
  spec.count = 1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = tiny_spec();
  spec.start = spec.stop = 1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = tiny_spec();
  spec.workers = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = tiny_spec();
  spec.axis = SweepAxis::j;
  spec.start = -0.1;  // j must stay non-negative on every grid point
  spec.stop = 0.1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK_NOTHROW(tiny_spec().validate());
}

TEST_CASE("independent sweeps are identical for 1 and 4 workers") {
  SweepSpec spec = tiny_spec();
  spec.workers = 1;
  const auto rows1 = run_sweep(spec);
  spec.workers = 4;
  const auto rows4 = run_sweep(spec);
  CHECK(rows_identical(rows1, rows4));
}

TEST_CASE("every grid point yields a row; divergence never aborts the sweep") {
  SweepSpec spec = tiny_spec();
  spec.integrator.divergence_threshold = 0.1;  // the cavity drive exceeds this immediately
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 11);
  for (const auto& row : rows) {
    CHECK(row.label.kind == AttractorKind::unbounded);
    CHECK(row.peaks.empty());
    CHECK(std::isnan(row.mle.value));
  }
}

TEST_CASE("warm start seeds each point from the previous final state") {
  SweepSpec spec = tiny_spec();
  spec.count = 4;
  spec.mode = SweepMode::warm_start;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 4);

  // replicate manually
  const auto values = grid(spec.start, spec.stop, spec.count);
  State6 seed = spec.initial_state;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const PointResult expect = analyze_point(with_axis(spec.base, spec.axis, values[i]), seed,
                                             spec.integrator, spec.mle, spec.analysis);
    CHECK(rows[i].param_value == values[i]);
    CHECK(rows[i].mle.value == expect.row.mle.value);
    CHECK(rows[i].peaks.values == expect.row.peaks.values);
    seed = expect.final_state;
  }
}

TEST_CASE("rows come back sorted by parameter value even for descending grids") {
  SweepSpec spec = tiny_spec();
  spec.start = 3.0;
  spec.stop = -3.0;
  spec.count = 5;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].param_value > rows[i - 1].param_value);
}

TEST_CASE("compare_modes: unique P=0 attractor gives full agreement") {
  SweepSpec spec = tiny_spec();
  spec.axis = SweepAxis::p_p;
  spec.start = 0.0;
  spec.stop = 1.0;
  spec.count = 5;
  spec.base.p = 0.0;
  const ModeComparison cmp = compare_modes(spec);
  CHECK(cmp.points == 5);
  CHECK(cmp.agreement == 1.0);
  CHECK(cmp.disagreements.empty());
}

TEST_CASE("workers cut wall time on a multi-core host") {
  if (std::thread::hardware_concurrency() < 2) return;  // nothing to measure
  SweepSpec spec = tiny_spec();
  spec.count = 24;
  spec.integrator.t_end = 120.0;
  spec.analysis.t_start = 60.0;
  spec.mle.t_transient = 30.0;
  spec.mle.t_total = 60.0;

  auto timed = [&](int workers) {
    spec.workers = workers;
    const auto t0 = std::chrono::steady_clock::now();
    run_sweep(spec);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  timed(1);  // warm-up pass so both measurements see hot caches
  const double serial = timed(1);
  const double parallel = timed(4);
  CHECK(parallel < serial);  // conservative floor; ~2x on two cores
}

TEST_CASE("analyze_point: reports wall time and a finite final state") {
  const SweepSpec spec = tiny_spec();
  const PointResult res =
      analyze_point(spec.base, spec.initial_state, spec.integrator, spec.mle, spec.analysis);
  CHECK(res.row.wall_time_s > 0.0);
  CHECK(res.final_state.finite());
}

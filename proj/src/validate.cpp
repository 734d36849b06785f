#include "qomchaos/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qomchaos/benchmarks.hpp"
#include "qomchaos/lyapunov.hpp"
#include "qomchaos/model.hpp"

namespace qomchaos {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult check_jacobian_fd(bool tamper) {
  CheckResult res{"jacobian_fd", false, 0.0, 1e-6, ""};
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> comp(-10.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double fd_h = 1e-6;
  double max_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ModelParams params;
    params.delta = -1.0 + 2.0 * unit(rng);
    params.delta_q = -1.0 + 2.0 * unit(rng);
    params.j = 0.5 * unit(rng);
    params.p = 3.0 * unit(rng);
    params.p_p = unit(rng);
    params.phi = -3.14 + 6.28 * unit(rng);
    Vec6 y;
    for (double& v : y) v = comp(rng);

    Mat6 analytic;
    jacobian(params, y, analytic);
    if (tamper) analytic[0][0] += 1e-3;

    for (int col = 0; col < 6; ++col) {
      Vec6 yp = y, ym = y, fp, fm;
      yp[col] += fd_h;
      ym[col] -= fd_h;
      rhs(params, yp, fp);
      rhs(params, ym, fm);
      for (int row = 0; row < 6; ++row) {
        const double fd = (fp[row] - fm[row]) / (2.0 * fd_h);
        max_err = std::max(max_err, std::abs(analytic[row][col] - fd));
      }
    }
  }
  res.measured = max_err;
  res.pass = max_err <= res.threshold;
  res.detail = "max |analytic - central FD| over 100 random states";
  return res;
}

CheckResult check_rk4_order() {
  CheckResult res{"rk4_order", false, 0.0, 0.0, "global-error slope on dy/dt = -y over [0,1]"};
  const std::vector<double> hs = {0.1, 0.05, 0.025, 0.0125};
  auto f = [](double, const Vec<1>& y, Vec<1>& dy) { dy[0] = -y[0]; };
  const auto fit = order_check<1>(f, {1.0}, 1.0, {std::exp(-1.0)}, hs);
  res.measured = fit.order;
  res.pass = fit.order >= 3.8 && fit.order <= 4.2;
  return res;
}

CheckResult check_lorenz_mle(const ValidateOptions& opt) {
  CheckResult res{"lorenz_mle", false, 0.0, opt.lorenz_tol, ""};
  LorenzSystem lorenz;
  IntegratorSettings is;
  is.h = opt.h;
  is.sample_dt = std::max(0.05, opt.h);
  is.t_end = 1.0;  // unused by the MLE drivers
  MleSettings ms;
  ms.t_transient = 500.0;
  ms.t_total = opt.lorenz_t_total;
  const Vec<3> y0 = {1.0, 1.0, 1.0};
  const MleEstimate tangent = mle_tangent(lorenz, y0, ms, is);
  const MleEstimate benettin = mle_benettin(lorenz, y0, ms, is);
  const double err = std::max(std::abs(tangent.value - kLorenzReferenceMle),
                              std::abs(benettin.value - kLorenzReferenceMle));
  res.measured = err;
  res.pass = err <= opt.lorenz_tol && tangent.bounded && benettin.bounded;
  res.detail = "tangent=" + fmt(tangent.value) + " benettin=" + fmt(benettin.value) +
               " reference=0.9056";
  return res;
}

CheckResult check_p0_steady_state(const ValidateOptions& opt) {
  CheckResult res{"p0_steady_state", false, 0.0, 1e-6,
                  "integrated t=200 state vs closed-form 2x2 solution"};
  ModelParams params;
  params.p = 0.0;
  const State6 exact = linear_steady_state(params);
  IntegratorSettings is;
  is.h = opt.h;
  is.sample_dt = std::max(0.05, opt.h);
  is.t_end = 200.0;
  const ModelSystem system{params};
  const auto traj = integrate(system, Vec6{}, is);
  double err = 0.0;
  const Vec6 ex = exact.to_array();
  for (int i = 0; i < 6; ++i) err = std::max(err, std::abs(traj.states.back()[i] - ex[i]));
  res.measured = err;
  res.pass = !traj.diverged && err <= res.threshold;
  return res;
}

CheckResult check_mle_cross_method(const ValidateOptions& opt) {
  CheckResult res{"mle_cross_method", false, 0.0, 0.0,
                  "max excess |benettin - tangent| - max(5%, 0.005) over random model points"};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  IntegratorSettings is;
  is.h = opt.h;
  is.sample_dt = std::max(0.05, opt.h);
  MleSettings ms;
  ms.t_transient = 2000.0;
  ms.t_total = opt.cross_t_total;

  double worst = -1.0;
  bool all_ok = true;
  for (int k = 0; k < opt.cross_points; ++k) {
    ModelParams params;
    params.delta = -0.75 + 0.10 * unit(rng);
    params.delta_q = -1.5 + 3.0 * unit(rng);
    params.j = 0.5 * unit(rng);
    params.p = 3.0 * unit(rng);
    params.p_p = 0.5 * unit(rng);
    params.phi = -3.14 + 6.28 * unit(rng);
    const ModelSystem system{params};
    const MleEstimate a = mle_benettin(system, Vec6{}, ms, is);
    const MleEstimate b = mle_tangent(system, Vec6{}, ms, is);
    if (!a.bounded || !b.bounded) continue;  // unbounded points certify nothing
    const double tol = std::max(0.05 * std::abs(b.value), 0.005);
    const double excess = std::abs(a.value - b.value) - tol;
    worst = std::max(worst, excess);
    if (excess > 0.0) all_ok = false;
  }
  res.measured = worst;
  res.pass = all_ok;
  return res;
}

}  // namespace

ValidateOptions quick_validate_options() {
  ValidateOptions opt;
  opt.h = 0.1;
  opt.lorenz_t_total = 2000.0;
  opt.lorenz_tol = 0.10;
  opt.cross_points = 2;
  opt.cross_t_total = 1500.0;
  return opt;
}

std::vector<CheckResult> run_validation(const ValidateOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(check_jacobian_fd(options.tamper_jacobian));
  results.push_back(check_rk4_order());
  results.push_back(check_lorenz_mle(options));
  results.push_back(check_p0_steady_state(options));
  results.push_back(check_mle_cross_method(options));
  return results;
}

}  // namespace qomchaos

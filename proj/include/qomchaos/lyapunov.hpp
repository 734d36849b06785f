// Maximal Lyapunov Exponent estimation by two independent routes: Benettin
// two-trajectory renormalization and the tangent-space (variational) method.
// Bounded motion with a positive MLE certifies chaos.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qomchaos/integrate.hpp"

namespace qomchaos {

enum class MleMethod { benettin_two_trajectory, tangent_variational };

struct MleSettings {
  double d0 = 1e-8;              // initial separation (Benettin)
  double renorm_interval = 1.0;  // time between renormalizations
  double t_transient = 500.0;    // discarded before accumulation
  double t_total = 3000.0;       // accumulation window
  MleMethod method = MleMethod::tangent_variational;

  bool operator==(const MleSettings&) const = default;

  void validate() const {
    if (!(d0 >= 1e-12 && d0 <= 1e-4))
      throw std::invalid_argument("mle.d0 must lie in [1e-12, 1e-4]");
    if (!(renorm_interval > 0.0))
      throw std::invalid_argument("mle.renorm_interval must be > 0");
    if (!(t_transient >= 0.0)) throw std::invalid_argument("mle.t_transient must be >= 0");
    if (!(t_total >= 10.0 * renorm_interval))
      throw std::invalid_argument("mle.t_total must be >= 10 * renorm_interval");
  }
};

struct MleEstimate {
  double value = 0.0;            // exponent per unit dimensionless time
  std::vector<double> history;   // running mean after each renormalization
  MleMethod method = MleMethod::tangent_variational;
  bool converged = false;
  bool bounded = true;           // no divergence during transient/accumulation
};

enum class MleSign { negative, zero, positive, indeterminate };

// Sign bucketing with dead-band eps. An unconverged estimate outside the
// dead-band cannot certify either way and reports indeterminate.
MleSign classify_mle(const MleEstimate& estimate, double eps = 0.005);

namespace detail {

bool history_converged(const std::vector<double>& history);

// Fixed initial direction shared by both methods: the normalized all-ones
// vector. A single-axis direction can lie inside an invariant subspace (the
// P=0 optical block) and then never sees the slowest mode; all-ones has a
// component along every coordinate.
template <std::size_t N>
Vec<N> unit_direction() {
  Vec<N> u;
  u.fill(1.0 / std::sqrt(static_cast<double>(N)));
  return u;
}

template <std::size_t N>
double norm2(const Vec<N>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline void finalize(MleEstimate& e) {
  if (!e.history.empty()) e.value = e.history.back();
  else e.value = std::numeric_limits<double>::quiet_NaN();
  e.converged = e.bounded && history_converged(e.history);
}

}  // namespace detail

// Two-trajectory method: integrate the fiducial orbit through the transient,
// clone it displaced by d0 along the fixed unit direction, and every
// renorm_interval accumulate ln(d/d0) and rescale the companion back to
// separation d0. The running mean of the accumulated logs is the estimate.
template <class S>
MleEstimate mle_benettin(const S& system, const Vec<S::dim>& y0, const MleSettings& ms,
                         const IntegratorSettings& is) {
  constexpr std::size_t N = S::dim;
  ms.validate();
  MleEstimate est;
  est.method = MleMethod::benettin_two_trajectory;

  OdeDriver<N, S> fiducial(system, is, y0);
  if (!fiducial.advance_to(ms.t_transient)) {
    est.bounded = false;
    detail::finalize(est);
    return est;
  }

  const Vec<N> u = detail::unit_direction<N>();
  Vec<N> yc = fiducial.state();
  for (std::size_t i = 0; i < N; ++i) yc[i] += ms.d0 * u[i];
  OdeDriver<N, S> companion(system, is, yc, ms.t_transient);

  const long n_intervals = std::max(1L, std::lround(ms.t_total / ms.renorm_interval));
  est.history.reserve(n_intervals);
  double acc = 0.0;
  for (long k = 1; k <= n_intervals; ++k) {
    const double t_k = ms.t_transient + static_cast<double>(k) * ms.renorm_interval;
    const bool ok_f = fiducial.advance_to(t_k);
    const bool ok_c = companion.advance_to(t_k);
    if (!ok_f || !ok_c) {
      est.bounded = false;
      break;
    }
    Vec<N> diff;
    for (std::size_t i = 0; i < N; ++i) diff[i] = companion.state()[i] - fiducial.state()[i];
    double d = std::max(detail::norm2(diff), 1e-300);
    acc += std::log(d / ms.d0);
    est.history.push_back(acc / (static_cast<double>(k) * ms.renorm_interval));
    const double scale = ms.d0 / d;
    Vec<N> yr;
    for (std::size_t i = 0; i < N; ++i) yr[i] = fiducial.state()[i] + diff[i] * scale;
    companion.set_state(yr);
  }
  detail::finalize(est);
  return est;
}

namespace detail {

// Coupled flow of the base state and one tangent vector: y' = f(y),
// v' = J(y) v.
template <class S>
struct TangentFlow {
  static constexpr std::size_t dim = 2 * S::dim;
  S sys;

  void operator()(double, const Vec<dim>& Y, Vec<dim>& dY) const noexcept {
    constexpr std::size_t n = S::dim;
    Vec<n> y, dy;
    for (std::size_t i = 0; i < n; ++i) y[i] = Y[i];
    sys.rhs_at(y, dy);
    SquareMat<n> jac;
    sys.jacobian_at(y, jac);
    for (std::size_t i = 0; i < n; ++i) {
      dY[i] = dy[i];
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += jac[i][k] * Y[n + k];
      dY[n + i] = s;
    }
  }
};

}  // namespace detail

// Variational method: co-integrate the tangent vector along the fiducial
// orbit, renormalizing ||v|| to 1 every renorm_interval and accumulating
// ln||v||. No d0 artifacts; this is the default method.
template <class S>
MleEstimate mle_tangent(const S& system, const Vec<S::dim>& y0, const MleSettings& ms,
                        const IntegratorSettings& is) {
  constexpr std::size_t N = S::dim;
  ms.validate();
  MleEstimate est;
  est.method = MleMethod::tangent_variational;

  OdeDriver<N, S> transient(system, is, y0);
  if (!transient.advance_to(ms.t_transient)) {
    est.bounded = false;
    detail::finalize(est);
    return est;
  }

  detail::TangentFlow<S> flow{system};
  Vec<2 * N> Y{};
  const Vec<N> u = detail::unit_direction<N>();
  for (std::size_t i = 0; i < N; ++i) {
    Y[i] = transient.state()[i];
    Y[N + i] = u[i];
  }
  OdeDriver<2 * N, detail::TangentFlow<S>> driver(flow, is, Y, ms.t_transient);

  const long n_intervals = std::max(1L, std::lround(ms.t_total / ms.renorm_interval));
  est.history.reserve(n_intervals);
  double acc = 0.0;
  for (long k = 1; k <= n_intervals; ++k) {
    const double t_k = ms.t_transient + static_cast<double>(k) * ms.renorm_interval;
    if (!driver.advance_to(t_k)) {
      est.bounded = false;
      break;
    }
    Vec<2 * N> cur = driver.state();
    Vec<N> v;
    for (std::size_t i = 0; i < N; ++i) v[i] = cur[N + i];
    double nv = std::max(detail::norm2(v), 1e-300);
    acc += std::log(nv);
    est.history.push_back(acc / (static_cast<double>(k) * ms.renorm_interval));
    for (std::size_t i = 0; i < N; ++i) cur[N + i] = v[i] / nv;
    driver.set_state(cur);
  }
  detail::finalize(est);
  return est;
}

// Dispatch on settings.method.
template <class S>
MleEstimate estimate_mle(const S& system, const Vec<S::dim>& y0, const MleSettings& ms,
                         const IntegratorSettings& is) {
  return ms.method == MleMethod::benettin_two_trajectory ? mle_benettin(system, y0, ms, is)
                                                         : mle_tangent(system, y0, ms, is);
}

}  // namespace qomchaos

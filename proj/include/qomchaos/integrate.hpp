// Fixed-dimension ODE integration: classical RK4 with exact uniform sampling,
// and adaptive Dormand-Prince RK5(4) with dense output.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qomchaos {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
using SquareMat = std::array<std::array<double, N>, N>;

enum class StepMethod { rk4_fixed, rk54_adaptive };

struct IntegratorSettings {
  StepMethod method = StepMethod::rk4_fixed;
  double h = 1e-3;       // fixed step, or initial step for adaptive
  double rtol = 1e-9;    // adaptive only
  double atol = 1e-12;   // adaptive only
  double sample_dt = 0.05;
  double t_end = 4000.0;
  double divergence_threshold = 1e6;  // inf-norm on the state

  bool operator==(const IntegratorSettings&) const = default;

  void validate() const {
    if (!(h > 0.0)) throw std::invalid_argument("integrator.h must be > 0");
    if (!(sample_dt > 0.0)) throw std::invalid_argument("integrator.sample_dt must be > 0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("integrator.t_end must be >= 0");
    if (method == StepMethod::rk4_fixed && sample_dt < h)
      throw std::invalid_argument("integrator.sample_dt must be >= h in fixed-step mode");
    if (!(rtol >= 1e-14)) throw std::invalid_argument("integrator.rtol must be >= 1e-14");
    if (!(atol >= 1e-16)) throw std::invalid_argument("integrator.atol must be >= 1e-16");
    if (!(divergence_threshold > 0.0))
      throw std::invalid_argument("integrator.divergence_threshold must be > 0");
  }
};

// Adaptive step-size underflow (h < kMinStep): the problem is too stiff for
// an explicit RK5(4) pair at the requested tolerance.
class StiffnessFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMinAdaptiveStep = 1e-12;

template <std::size_t N>
struct Trajectory {
  std::vector<double> times;        // exact multiples of sample_dt
  std::vector<Vec<N>> states;       // same length as times
  bool diverged = false;
  double divergence_time = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

template <std::size_t N>
inline double inf_norm(const Vec<N>& y) {
  double m = 0.0;
  for (double v : y) m = std::max(m, std::abs(v));
  return m;
}

// NaN-aware: a non-finite state counts as divergent.
template <std::size_t N>
inline bool exceeds(const Vec<N>& y, double threshold) {
  return !(inf_norm(y) <= threshold);
}

}  // namespace detail

// One classical 4th-order Runge-Kutta step. f(t, y, dy) writes the derivative.
template <std::size_t N, class F>
Vec<N> step_rk4(F&& f, const Vec<N>& y, double t, double h) {
  Vec<N> k1, k2, k3, k4, tmp;
  f(t, y, k1);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  f(t + 0.5 * h, tmp, k2);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  f(t + 0.5 * h, tmp, k3);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
  f(t + h, tmp, k4);
  Vec<N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

namespace detail {

// Dormand-Prince 5(4) stepper with FSAL and the standard quartic dense-output
// interpolant (Hairer-Norsett-Wanner contd5 coefficients).
template <std::size_t N, class F>
class Dopri5 {
 public:
  Dopri5(F& f, double t0, const Vec<N>& y0, double h0, double rtol, double atol)
      : f_(f), t_(t0), y_(y0), h_(h0), rtol_(rtol), atol_(atol) {
    f_(t_, y_, k1_);
  }

  double time() const { return t_; }
  const Vec<N>& state() const { return y_; }
  double step_size() const { return h_; }

  void reset_state(const Vec<N>& y) {
    y_ = y;
    f_(t_, y_, k1_);  // refresh FSAL derivative
  }

  // Advance by one accepted step of size at most h_max. The step actually
  // taken is recorded in last_t0/last_h for dense evaluation.
  void step(double h_max) {
    bool rejected = false;
    for (;;) {
      double h = std::min(h_, h_max);
      if (h < kMinAdaptiveStep)
        throw StiffnessFailure("adaptive step size underflow (h < 1e-12): problem too stiff");
      attempt(h);
      double err = error_norm();
      if (err <= 1.0) {
        last_t0_ = t_;
        last_h_ = h;
        prepare_dense(h);
        t_ += h;
        y_ = y_new_;
        k1_ = k7_;  // FSAL
        double factor = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (rejected) factor = std::min(factor, 1.0);
        h_ = h * factor;
        return;
      }
      rejected = true;
      h_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
    }
  }

  // State at t inside the last accepted step, via the method's dense output.
  Vec<N> dense(double t) const {
    double theta = (t - last_t0_) / last_h_;
    double th1 = 1.0 - theta;
    Vec<N> out;
    for (std::size_t i = 0; i < N; ++i)
      out[i] = rcont1_[i] +
               theta * (rcont2_[i] + th1 * (rcont3_[i] + theta * (rcont4_[i] + th1 * rcont5_[i])));
    return out;
  }

 private:
  void attempt(double h) {
    auto stage = [&](const std::array<double, 6>& a, int na, double c, Vec<N>& k) {
      Vec<N> tmp;
      const Vec<N>* ks[6] = {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_};
      for (std::size_t i = 0; i < N; ++i) {
        double s = 0.0;
        for (int j = 0; j < na; ++j) s += a[j] * (*ks[j])[i];
        tmp[i] = y_[i] + h * s;
      }
      f_(t_ + c * h, tmp, k);
    };
    stage({1.0 / 5}, 1, 1.0 / 5, k2_);
    stage({3.0 / 40, 9.0 / 40}, 2, 3.0 / 10, k3_);
    stage({44.0 / 45, -56.0 / 15, 32.0 / 9}, 3, 4.0 / 5, k4_);
    stage({19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729}, 4, 8.0 / 9, k5_);
    stage({9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656}, 5, 1.0, k6_);
    for (std::size_t i = 0; i < N; ++i)
      y_new_[i] = y_[i] + h * (35.0 / 384 * k1_[i] + 500.0 / 1113 * k3_[i] + 125.0 / 192 * k4_[i] -
                               2187.0 / 6784 * k5_[i] + 11.0 / 84 * k6_[i]);
    f_(t_ + h, y_new_, k7_);
    for (std::size_t i = 0; i < N; ++i)
      err_[i] = h * (71.0 / 57600 * k1_[i] - 71.0 / 16695 * k3_[i] + 71.0 / 1920 * k4_[i] -
                     17253.0 / 339200 * k5_[i] + 22.0 / 525 * k6_[i] - 1.0 / 40 * k7_[i]);
  }

  double error_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double sc = atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(y_new_[i]));
      double r = err_[i] / sc;
      s += r * r;
    }
    return std::sqrt(s / static_cast<double>(N));
  }

  void prepare_dense(double h) {
    constexpr double d1 = -12715105075.0 / 11282082432.0;
    constexpr double d3 = 87487479700.0 / 32700410799.0;
    constexpr double d4 = -10690763975.0 / 1880347072.0;
    constexpr double d5 = 701980252875.0 / 199316789632.0;
    constexpr double d6 = -1453857185.0 / 822651844.0;
    constexpr double d7 = 69997945.0 / 29380423.0;
    for (std::size_t i = 0; i < N; ++i) {
      double ydiff = y_new_[i] - y_[i];
      double bspl = h * k1_[i] - ydiff;
      rcont1_[i] = y_[i];
      rcont2_[i] = ydiff;
      rcont3_[i] = bspl;
      rcont4_[i] = ydiff - h * k7_[i] - bspl;
      rcont5_[i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] +
                        d7 * k7_[i]);
    }
  }

  F& f_;
  double t_;
  Vec<N> y_, y_new_;
  double h_;
  double rtol_, atol_;
  Vec<N> k1_, k2_, k3_, k4_, k5_, k6_, k7_, err_;
  double last_t0_ = 0.0, last_h_ = 0.0;
  Vec<N> rcont1_{}, rcont2_{}, rcont3_{}, rcont4_{}, rcont5_{};
};

}  // namespace detail

// Drives one trajectory between arbitrary time targets. Fixed-step mode lands
// exactly on each target by taking round(span/h) equal sub-steps; adaptive
// mode clamps the final step onto the target. Single-use, single-thread.
template <std::size_t N, class F>
class OdeDriver {
 public:
  OdeDriver(F f, const IntegratorSettings& s, const Vec<N>& y0, double t0 = 0.0)
      : f_(std::move(f)), settings_(s), t_(t0), y_(y0) {
    settings_.validate();
    if (settings_.method == StepMethod::rk54_adaptive)
      dopri_.emplace(f_, t0, y0, s.h, s.rtol, s.atol);
  }

  double time() const { return t_; }
  const Vec<N>& state() const { return y_; }

  void set_state(const Vec<N>& y) {
    y_ = y;
    if (dopri_) dopri_->reset_state(y);
  }

  // Integrate to t_target exactly. Returns false if the divergence threshold
  // tripped on the way (time() then reports when).
  bool advance_to(double t_target) {
    double span = t_target - t_;
    if (span <= 0.0) return true;
    if (settings_.method == StepMethod::rk4_fixed) {
      long n = std::max(1L, std::lround(span / settings_.h));
      double h = span / static_cast<double>(n);
      for (long i = 0; i < n; ++i) {
        y_ = step_rk4(f_, y_, t_, h);
        t_ = (i + 1 == n) ? t_target : t_ + h;
        if (detail::exceeds(y_, settings_.divergence_threshold)) return false;
      }
      return true;
    }
    while (dopri_->time() < t_target) {
      dopri_->step(t_target - dopri_->time());
      t_ = dopri_->time();
      y_ = dopri_->state();
      if (detail::exceeds(y_, settings_.divergence_threshold)) return false;
    }
    t_ = t_target;
    return true;
  }

 private:
  F f_;
  IntegratorSettings settings_;
  double t_;
  Vec<N> y_;
  std::optional<detail::Dopri5<N, F>> dopri_;
};

// Integrate from t=0 to t_end, emitting samples at exact multiples of
// sample_dt (the final sample is the largest multiple <= t_end). Halts early
// with the diverged flag set if the state inf-norm exceeds the threshold.
template <std::size_t N, class F>
Trajectory<N> integrate(F&& f, const Vec<N>& y0, const IntegratorSettings& s) {
  s.validate();
  Trajectory<N> traj;
  long n_samples = static_cast<long>(std::floor(s.t_end / s.sample_dt * (1.0 + 1e-12)));
  traj.times.reserve(n_samples + 1);
  traj.states.reserve(n_samples + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(y0);
  if (detail::exceeds(y0, s.divergence_threshold)) {
    traj.diverged = true;
    traj.divergence_time = 0.0;
    return traj;
  }

  if (s.method == StepMethod::rk4_fixed) {
    long n_sub = std::max(1L, std::lround(s.sample_dt / s.h));
    double h = s.sample_dt / static_cast<double>(n_sub);
    Vec<N> y = y0;
    for (long k = 1; k <= n_samples; ++k) {
      double t0 = static_cast<double>(k - 1) * s.sample_dt;
      for (long i = 0; i < n_sub; ++i) {
        y = step_rk4(f, y, t0 + static_cast<double>(i) * h, h);
        if (detail::exceeds(y, s.divergence_threshold)) {
          traj.diverged = true;
          traj.divergence_time = t0 + static_cast<double>(i + 1) * h;
          return traj;
        }
      }
      traj.times.push_back(static_cast<double>(k) * s.sample_dt);
      traj.states.push_back(y);
    }
    return traj;
  }

  detail::Dopri5<N, F> stepper(f, 0.0, y0, s.h, s.rtol, s.atol);
  long next = 1;
  double t_last = static_cast<double>(n_samples) * s.sample_dt;
  while (next <= n_samples) {
    stepper.step(t_last - stepper.time());
    if (detail::exceeds(stepper.state(), s.divergence_threshold)) {
      traj.diverged = true;
      traj.divergence_time = stepper.time();
      return traj;
    }
    while (next <= n_samples &&
           static_cast<double>(next) * s.sample_dt <= stepper.time() * (1.0 + 1e-15)) {
      double ts = static_cast<double>(next) * s.sample_dt;
      Vec<N> ys = stepper.dense(ts);
      if (detail::exceeds(ys, s.divergence_threshold)) {
        traj.diverged = true;
        traj.divergence_time = ts;
        return traj;
      }
      traj.times.push_back(ts);
      traj.states.push_back(ys);
      ++next;
    }
  }
  return traj;
}

struct OrderCheckResult {
  double order = 0.0;            // least-squares slope of log(error) vs log(h)
  bool exact = false;            // all errors at machine zero; slope meaningless
  std::vector<double> errors;    // global inf-norm error per step size
};

// Global convergence-order fit for fixed-step RK4 on a problem with a known
// solution at t_end. h_list must contain >= 3 entries, each half the previous.
template <std::size_t N, class F>
OrderCheckResult order_check(F&& f, const Vec<N>& y0, double t_end, const Vec<N>& exact_final,
                             std::span<const double> h_list) {
  if (h_list.size() < 3) throw std::invalid_argument("order_check: need at least 3 step sizes");
  for (std::size_t i = 1; i < h_list.size(); ++i)
    if (std::abs(h_list[i] - 0.5 * h_list[i - 1]) > 1e-9 * h_list[i - 1])
      throw std::invalid_argument("order_check: each step size must halve the previous");

  OrderCheckResult res;
  double scale = 1.0 + detail::inf_norm(exact_final);
  for (double h : h_list) {
    long n = std::max(1L, std::lround(t_end / h));
    double hs = t_end / static_cast<double>(n);
    Vec<N> y = y0;
    for (long i = 0; i < n; ++i) y = step_rk4(f, y, static_cast<double>(i) * hs, hs);
    double e = 0.0;
    for (std::size_t j = 0; j < N; ++j) e = std::max(e, std::abs(y[j] - exact_final[j]));
    res.errors.push_back(e);
  }
  bool all_zero = true;
  for (double e : res.errors)
    if (e > 1e-14 * scale) all_zero = false;
  if (all_zero) {
    res.exact = true;
    return res;
  }
  // least-squares slope of log(e) vs log(h)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  auto n = static_cast<double>(h_list.size());
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    double x = std::log(h_list[i]);
    double yv = std::log(std::max(res.errors[i], 1e-300));
    sx += x; sy += yv; sxx += x * x; sxy += x * yv;
  }
  res.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return res;
}

}  // namespace qomchaos

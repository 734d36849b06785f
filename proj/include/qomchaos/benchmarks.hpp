// Reference systems used for integrator and Lyapunov-exponent calibration.
#pragma once

#include "qomchaos/integrate.hpp"

namespace qomchaos {

// Lorenz system; at the classic (10, 28, 8/3) parameters the maximal
// Lyapunov exponent is 0.9056.
struct LorenzSystem {
  static constexpr std::size_t dim = 3;
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;

  void operator()(double, const Vec<3>& y, Vec<3>& dy) const noexcept { rhs_at(y, dy); }
  void rhs_at(const Vec<3>& y, Vec<3>& dy) const noexcept {
    dy[0] = sigma * (y[1] - y[0]);
    dy[1] = y[0] * (rho - y[2]) - y[1];
    dy[2] = y[0] * y[1] - beta * y[2];
  }
  void jacobian_at(const Vec<3>& y, SquareMat<3>& j) const noexcept {
    j[0] = {-sigma, sigma, 0.0};
    j[1] = {rho - y[2], -1.0, -y[0]};
    j[2] = {y[1], y[0], -beta};
  }
};

inline constexpr double kLorenzReferenceMle = 0.9056;

// dy/dt = -rate * y; exponent is exactly -rate.
struct LinearDecay {
  static constexpr std::size_t dim = 1;
  double rate = 1.0;

  void operator()(double, const Vec<1>& y, Vec<1>& dy) const noexcept { rhs_at(y, dy); }
  void rhs_at(const Vec<1>& y, Vec<1>& dy) const noexcept { dy[0] = -rate * y[0]; }
  void jacobian_at(const Vec<1>&, SquareMat<1>& j) const noexcept { j[0][0] = -rate; }
};

}  // namespace qomchaos

// Mean-field dynamics of a driven optical cavity coupled to a mechanical
// oscillator (radiation pressure) and to a two-level system (exchange
// coupling J), in dimensionless rotating-frame variables with omega_m = 1.
//
// State layout: (a_re, a_im, b_re, b_im, q_re, q_im) for the complex cavity
// field alpha, mechanical amplitude beta, and qubit coherence psi.
#pragma once

#include <array>
#include <optional>
#include <string>

#include "qomchaos/integrate.hpp"

namespace qomchaos {

using Vec6 = Vec<6>;
using Mat6 = SquareMat<6>;

struct ModelParams {
  double delta = -0.65;    // cavity detuning
  double delta_q = 0.5;    // qubit detuning
  double j = 0.2;          // cavity-qubit coupling, >= 0
  double p = 1.4;          // pump parameter, >= 0
  double p_p = 0.5;        // qubit-to-cavity drive amplitude ratio, >= 0
  double phi = 0.0;        // relative drive phase, radians
  double kappa = 1.0;      // cavity decay, > 0
  double kappa_m = 0.001;  // mechanical decay, > 0
  double kappa_q = 1.0;    // qubit decay, > 0
  std::optional<double> omega_m_hz;  // physical mechanical frequency, Hz (unit conversion only)

  void validate() const;  // throws std::invalid_argument naming the offending field
  bool operator==(const ModelParams&) const = default;
};

struct State6 {
  double a_re = 0.0, a_im = 0.0;
  double b_re = 0.0, b_im = 0.0;
  double q_re = 0.0, q_im = 0.0;

  Vec6 to_array() const { return {a_re, a_im, b_re, b_im, q_re, q_im}; }
  static State6 from_array(const Vec6& v) { return {v[0], v[1], v[2], v[3], v[4], v[5]}; }
  bool finite() const;
  bool operator==(const State6&) const = default;
};

struct Observables {
  double x = 0.0;      // mechanical position quadrature, sqrt(2)*Re(beta)
  double p_mom = 0.0;  // mechanical momentum quadrature, -sqrt(2)*Im(beta)
  double n_a = 0.0;    // |alpha|^2
  double n_q = 0.0;    // |psi|^2
};

// Time derivative of the six real components. Pure; hot-loop form.
void rhs(const ModelParams& params, const Vec6& y, Vec6& dy) noexcept;
State6 rhs(const ModelParams& params, const State6& state);

// Analytic linearization: out[i][j] = d(rhs_i)/d(y_j).
void jacobian(const ModelParams& params, const Vec6& y, Mat6& out) noexcept;

Observables observables(const State6& state);
inline double position_x(const Vec6& y) { return 1.4142135623730951 * y[2]; }

// Exact steady state of the P=0 system: beta*=0 and (alpha*, psi*) solve the
// 2x2 complex linear system
//   (i*delta + kappa/2) alpha - i j psi   = 1/2
//   (i*delta_q + kappa_q/2) psi - i j alpha = (p_p/2) e^{i phi}.
// Throws std::invalid_argument if params.p != 0, std::runtime_error if the
// system is singular (|det| < 1e-12).
State6 linear_steady_state(const ModelParams& params);

struct NewtonResult {
  State6 state;
  int iterations = 0;
  bool converged = false;
  std::string error;  // empty on success; "max_iter" / "singular_jacobian" otherwise
};

// Newton iteration on rhs = 0 with the analytic Jacobian. Convergence when
// ||rhs||_inf <= tol; fails on max_iter or an ill-conditioned Jacobian
// (reciprocal condition estimate below 1e-14).
NewtonResult newton_fixed_point(const ModelParams& params, const State6& guess,
                                double tol = 1e-10, int max_iter = 50);

enum class PhysicalKind { frequency, rate, time };

// Map a dimensionless quantity to SI via the physical mechanical frequency:
// frequencies and rates multiply by omega_m_hz, times divide by it.
double to_physical(const ModelParams& params, double quantity, PhysicalKind kind);

// Adapter for the generic integration / Lyapunov machinery.
struct ModelSystem {
  static constexpr std::size_t dim = 6;
  ModelParams params;

  void operator()(double, const Vec6& y, Vec6& dy) const noexcept { rhs(params, y, dy); }
  void rhs_at(const Vec6& y, Vec6& dy) const noexcept { rhs(params, y, dy); }
  void jacobian_at(const Vec6& y, Mat6& out) const noexcept { jacobian(params, y, out); }
};

}  // namespace qomchaos

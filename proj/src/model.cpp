#include "qomchaos/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qomchaos {

void ModelParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string("model.") + name + " must be > 0");
  };
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0)) throw std::invalid_argument(std::string("model.") + name + " must be >= 0");
  };
  auto finite = [](double v, const char* name) {
    if (!std::isfinite(v))
      throw std::invalid_argument(std::string("model.") + name + " must be finite");
  };
  finite(delta, "delta");
  finite(delta_q, "delta_q");
  finite(phi, "phi");
  positive(kappa, "kappa");
  positive(kappa_m, "kappa_m");
  positive(kappa_q, "kappa_q");
  non_negative(p, "p");
  non_negative(p_p, "p_p");
  non_negative(j, "j");
  if (omega_m_hz && !(*omega_m_hz > 0.0))
    throw std::invalid_argument("model.omega_m_hz must be > 0 when present");
}

bool State6::finite() const {
  for (double v : to_array())
    if (!std::isfinite(v)) return false;
  return true;
}

void rhs(const ModelParams& p, const Vec6& y, Vec6& dy) noexcept {
  const double a_re = y[0], a_im = y[1], b_re = y[2], b_im = y[3], q_re = y[4], q_im = y[5];
  const double n_a = a_re * a_re + a_im * a_im;
  dy[0] = p.delta * a_im - 2.0 * b_re * a_im - p.j * q_im - 0.5 * p.kappa * a_re + 0.5;
  dy[1] = -p.delta * a_re + 2.0 * b_re * a_re + p.j * q_re - 0.5 * p.kappa * a_im;
  dy[2] = b_im - 0.5 * p.kappa_m * b_re;
  dy[3] = -b_re - 0.5 * p.p * n_a - 0.5 * p.kappa_m * b_im;
  dy[4] = p.delta_q * q_im - p.j * a_im - 0.5 * p.kappa_q * q_re + 0.5 * p.p_p * std::cos(p.phi);
  dy[5] = -p.delta_q * q_re + p.j * a_re - 0.5 * p.kappa_q * q_im + 0.5 * p.p_p * std::sin(p.phi);
}

State6 rhs(const ModelParams& params, const State6& state) {
  Vec6 dy;
  rhs(params, state.to_array(), dy);
  return State6::from_array(dy);
}

void jacobian(const ModelParams& p, const Vec6& y, Mat6& out) noexcept {
  const double a_re = y[0], a_im = y[1], b_re = y[2];
  for (auto& row : out) row.fill(0.0);
  out[0][0] = -0.5 * p.kappa;
  out[0][1] = p.delta - 2.0 * b_re;
  out[0][2] = -2.0 * a_im;
  out[0][5] = -p.j;
  out[1][0] = -p.delta + 2.0 * b_re;
  out[1][1] = -0.5 * p.kappa;
  out[1][2] = 2.0 * a_re;
  out[1][4] = p.j;
  out[2][2] = -0.5 * p.kappa_m;
  out[2][3] = 1.0;
  out[3][0] = -p.p * a_re;
  out[3][1] = -p.p * a_im;
  out[3][2] = -1.0;
  out[3][3] = -0.5 * p.kappa_m;
  out[4][1] = -p.j;
  out[4][4] = -0.5 * p.kappa_q;
  out[4][5] = p.delta_q;
  out[5][0] = p.j;
  out[5][4] = -p.delta_q;
  out[5][5] = -0.5 * p.kappa_q;
}

Observables observables(const State6& s) {
  constexpr double sqrt2 = 1.4142135623730951;
  Observables o;
  o.x = sqrt2 * s.b_re;
  o.p_mom = -sqrt2 * s.b_im;
  o.n_a = s.a_re * s.a_re + s.a_im * s.a_im;
  o.n_q = s.q_re * s.q_re + s.q_im * s.q_im;
  return o;
}

State6 linear_steady_state(const ModelParams& params) {
  params.validate();
  if (params.p != 0.0)
    throw std::invalid_argument("linear_steady_state requires p = 0");
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  const C m11 = i * params.delta + 0.5 * params.kappa;
  const C m22 = i * params.delta_q + 0.5 * params.kappa_q;
  const C m12 = -i * params.j;
  const C det = m11 * m22 - m12 * m12;
  if (std::abs(det) < 1e-12)
    throw std::runtime_error("linear_steady_state: singular 2x2 system (|det| < 1e-12)");
  const C rhs_a(0.5, 0.0);
  const C rhs_q = 0.5 * params.p_p * std::exp(i * params.phi);
  const C alpha = (rhs_a * m22 - m12 * rhs_q) / det;
  const C psi = (m11 * rhs_q - m12 * rhs_a) / det;
  State6 s;
  s.a_re = alpha.real();
  s.a_im = alpha.imag();
  s.q_re = psi.real();
  s.q_im = psi.imag();
  return s;
}

NewtonResult newton_fixed_point(const ModelParams& params, const State6& guess,
                                double tol, int max_iter) {
  params.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("newton_fixed_point: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("newton_fixed_point: max_iter must be >= 1");

  NewtonResult res;
  Vec6 y = guess.to_array();
  Vec6 f;
  Mat6 jac;
  for (int it = 0; it <= max_iter; ++it) {
    rhs(params, y, f);
    double norm = 0.0;
    for (double v : f) norm = std::max(norm, std::abs(v));
    if (norm <= tol) {
      res.state = State6::from_array(y);
      res.iterations = it;
      res.converged = true;
      return res;
    }
    if (it == max_iter) break;
    jacobian(params, y, jac);
    Eigen::Matrix<double, 6, 6> J;
    Eigen::Matrix<double, 6, 1> F;
    for (int r = 0; r < 6; ++r) {
      F(r) = f[r];
      for (int c = 0; c < 6; ++c) J(r, c) = jac[r][c];
    }
    Eigen::PartialPivLU<Eigen::Matrix<double, 6, 6>> lu(J);
    if (!(lu.rcond() > 1e-14)) {
      res.state = State6::from_array(y);
      res.iterations = it;
      res.error = "singular_jacobian";
      return res;
    }
    Eigen::Matrix<double, 6, 1> step = lu.solve(F);
    for (int r = 0; r < 6; ++r) y[r] -= step(r);
  }
  res.state = State6::from_array(y);
  res.iterations = max_iter;
  res.error = "max_iter";
  return res;
}

double to_physical(const ModelParams& params, double quantity, PhysicalKind kind) {
  if (!params.omega_m_hz)
    throw std::invalid_argument("to_physical requires omega_m_hz");
  switch (kind) {
    case PhysicalKind::frequency:
    case PhysicalKind::rate:
      return quantity * *params.omega_m_hz;
    case PhysicalKind::time:
      return quantity / *params.omega_m_hz;
  }
  throw std::invalid_argument("to_physical: unknown kind");
}

}  // namespace qomchaos

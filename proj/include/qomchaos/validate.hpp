// Built-in oracle suite behind the `validate` subcommand: Jacobian vs finite
// differences, RK4 convergence order, Lorenz MLE calibration, the P=0
// closed-form steady state, and cross-method MLE agreement.
#pragma once

#include <string>
#include <vector>

namespace qomchaos {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidateOptions {
  double h = 1e-3;               // step for the ODE-based checks
  double lorenz_t_total = 5000.0;
  double lorenz_tol = 0.02;      // |mle - 0.9056| bound per method
  int cross_points = 3;          // random model points for cross-method agreement
  double cross_t_total = 3000.0;
  // Test hook: corrupt one analytic Jacobian entry so the FD check must fail.
  bool tamper_jacobian = false;
};

// Reduced-precision profile (h = 0.1): the Lorenz tolerance widens to 0.10
// and the accumulation window shrinks; the order and Jacobian checks are
// step-size independent and keep their thresholds.
ValidateOptions quick_validate_options();

std::vector<CheckResult> run_validation(const ValidateOptions& options = {});

}  // namespace qomchaos

#include "qomchaos/lyapunov.hpp"

#include <algorithm>
#include <cmath>

namespace qomchaos {

namespace detail {

// Converged when the running estimate moves by <= 5% (relative) over the
// final 20% of the window, or when the estimate sits near zero, where
// finite-window fluctuations dominate any relative measure.
bool history_converged(const std::vector<double>& history) {
  if (history.empty()) return false;
  const double value = history.back();
  if (std::abs(value) <= 0.005) return true;
  const std::size_t n = history.size();
  const std::size_t window = std::max<std::size_t>(2, n / 5);
  if (window > n) return false;
  double lo = history[n - window], hi = lo;
  for (std::size_t i = n - window; i < n; ++i) {
    lo = std::min(lo, history[i]);
    hi = std::max(hi, history[i]);
  }
  return (hi - lo) <= 0.05 * std::abs(value);
}

}  // namespace detail

MleSign classify_mle(const MleEstimate& estimate, double eps) {
  if (std::isnan(estimate.value)) return MleSign::indeterminate;
  if (std::abs(estimate.value) <= eps) return MleSign::zero;
  if (!estimate.converged) return MleSign::indeterminate;
  return estimate.value > 0.0 ? MleSign::positive : MleSign::negative;
}

}  // namespace qomchaos

#include "qomchaos/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qomchaos {

PeakSet find_peaks(std::span<const double> times, std::span<const double> x,
                   double min_prominence) {
  if (times.size() != x.size())
    throw std::invalid_argument("find_peaks: times and x must have equal length");
  if (x.size() < 3) throw std::invalid_argument("find_peaks: need at least 3 samples");

  PeakSet out;
  out.min_prominence = min_prominence;
  const std::size_t n = x.size();

  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (x[i - 1] < x[i] && x[i] >= x[i + 1]) idx.push_back(i);
  if (idx.empty()) return out;

  // Topographic prominence: on each side, scan to the nearest strictly higher
  // sample (or the window edge) and take the lowest point of that stretch;
  // the peak rises prominence above the higher of the two. Micro-ripple next
  // to a tall peak gets only its saddle depth, the tall peak keeps its full
  // height.
  for (const std::size_t i : idx) {
    double left_min = x[i];
    for (std::size_t m = i; m-- > 0;) {
      if (x[m] > x[i]) break;
      left_min = std::min(left_min, x[m]);
    }
    double right_min = x[i];
    for (std::size_t m = i + 1; m < n; ++m) {
      if (x[m] > x[i]) break;
      right_min = std::min(right_min, x[m]);
    }
    const double prominence = x[i] - std::max(left_min, right_min);
    if (prominence < min_prominence) continue;

    // Quadratic through (i-1, i, i+1); the second difference is negative for
    // any strict discrete maximum, so the vertex is a true maximum >= x[i].
    const double d2 = x[i - 1] - 2.0 * x[i] + x[i + 1];
    const double dt = times[i] - times[i - 1];
    double t_peak = times[i];
    double v_peak = x[i];
    if (d2 < 0.0) {
      const double shift = 0.5 * (x[i - 1] - x[i + 1]) / d2;  // in units of dt
      t_peak = times[i] + shift * dt;
      v_peak = x[i] - 0.125 * (x[i - 1] - x[i + 1]) * (x[i - 1] - x[i + 1]) / d2;
    }
    out.times.push_back(t_peak);
    out.values.push_back(v_peak);
  }
  return out;
}

ClusterResult cluster_peaks(const PeakSet& peaks, double rel_tol, double abs_tol) {
  if (peaks.empty()) throw std::invalid_argument("cluster_peaks: peak set is empty");

  const std::size_t n = peaks.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return peaks.values[a] < peaks.values[b]; });

  const double range = peaks.values[order.back()] - peaks.values[order.front()];
  const double merge = std::max(abs_tol, rel_tol * range);

  // In one dimension single linkage reduces to cutting sorted gaps > merge.
  ClusterResult res;
  res.sequence.assign(n, 0);
  int cluster = 0;
  res.sequence[order[0]] = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (peaks.values[order[k]] - peaks.values[order[k - 1]] > merge) ++cluster;
    res.sequence[order[k]] = cluster;
  }
  res.n_clusters = cluster + 1;

  // Cyclic-order check: the time-ordered sequence must repeat with period
  // n_clusters and visit every cluster within one period.
  const int p = res.n_clusters;
  res.cyclic = true;
  if (p == 1) return res;
  if (static_cast<int>(n) < 2 * p) {
    res.cyclic = false;
    return res;
  }
  for (std::size_t k = 0; k + p < n && res.cyclic; ++k)
    if (res.sequence[k] != res.sequence[k + p]) res.cyclic = false;
  if (res.cyclic) {
    std::vector<bool> seen(p, false);
    for (int k = 0; k < p; ++k) seen[res.sequence[k]] = true;
    for (int c = 0; c < p; ++c)
      if (!seen[c]) res.cyclic = false;
  }
  return res;
}

std::string to_string(AttractorKind kind) {
  switch (kind) {
    case AttractorKind::fixed_point: return "fixed_point";
    case AttractorKind::period_n: return "period_n";
    case AttractorKind::chaotic: return "chaotic";
    case AttractorKind::unbounded: return "unbounded";
    case AttractorKind::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

SignalStats signal_stats(std::span<const double> x) {
  SignalStats s;
  if (x.empty()) return s;
  s.min = s.max = x[0];
  double sum = 0.0;
  for (double v : x) {
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    sum += v;
  }
  s.mean = sum / static_cast<double>(x.size());
  return s;
}

AttractorLabel classify(const PeakSet& peaks, const SignalStats& window, const MleEstimate& mle,
                        bool diverged, const AttractorSettings& settings) {
  AttractorLabel label;
  if (diverged) {
    label.kind = AttractorKind::unbounded;
    return label;
  }

  const MleSign sign = classify_mle(mle);
  const double mean_peak =
      peaks.empty() ? window.mean
                    : std::accumulate(peaks.values.begin(), peaks.values.end(), 0.0) /
                          static_cast<double>(peaks.size());

  if ((peaks.empty() || (window.max - window.min) < settings.fixed_point_range) &&
      (sign == MleSign::negative || sign == MleSign::zero)) {
    label.kind = AttractorKind::fixed_point;
    label.amplitude = window.mean;
    return label;
  }
  if (sign == MleSign::positive && mle.bounded) {
    label.kind = AttractorKind::chaotic;
    label.amplitude = mean_peak;
    if (!peaks.empty()) label.n_clusters = cluster_peaks(peaks, settings.rel_tol,
                                                         settings.abs_tol).n_clusters;
    return label;
  }
  if ((sign == MleSign::negative || sign == MleSign::zero) && !peaks.empty()) {
    const ClusterResult clusters = cluster_peaks(peaks, settings.rel_tol, settings.abs_tol);
    label.n_clusters = clusters.n_clusters;
    if (clusters.cyclic) {
      label.kind = AttractorKind::period_n;
      label.n = clusters.n_clusters;
      label.amplitude = mean_peak;
      return label;
    }
  }
  label.kind = AttractorKind::indeterminate;
  label.amplitude = mean_peak;
  return label;
}

}  // namespace qomchaos

// Bifurcation-diagram data extraction: local maxima of the mechanical
// position x(t) with quadratic refinement, single-linkage clustering of peak
// heights, and attractor classification.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "qomchaos/lyapunov.hpp"

namespace qomchaos {

struct PeakSet {
  std::vector<double> times;   // strictly increasing
  std::vector<double> values;  // interpolated peak heights, matching times
  double min_prominence = 0.0;

  bool empty() const { return values.empty(); }
  std::size_t size() const { return values.size(); }
};

// Local maxima x[i-1] < x[i] >= x[i+1] with prominence >= min_prominence,
// where prominence is the height above the higher of the two flanking minima
// (the lowest samples between this peak and its neighbouring peaks, or the
// window edges). Each peak is refined by the quadratic through its three
// surrounding samples. Requires >= 3 uniformly spaced samples; an empty
// result is valid and signals a fixed point.
PeakSet find_peaks(std::span<const double> times, std::span<const double> x,
                   double min_prominence);

struct ClusterResult {
  int n_clusters = 0;
  bool cyclic = false;          // peak sequence cycles through the clusters
  std::vector<int> sequence;    // cluster index of each peak, in time order
};

// Single-linkage clustering of peak values with merge distance
// max(abs_tol, rel_tol * range); also checks that the time-ordered peak
// sequence visits the clusters with fixed period n_clusters.
ClusterResult cluster_peaks(const PeakSet& peaks, double rel_tol = 1e-3, double abs_tol = 1e-4);

enum class AttractorKind { fixed_point, period_n, chaotic, unbounded, indeterminate };

std::string to_string(AttractorKind kind);

struct AttractorLabel {
  AttractorKind kind = AttractorKind::indeterminate;
  int n = 0;              // period for period_n, else 0
  double amplitude = 0.0; // mean peak value, or the fixed-point x
  int n_clusters = 0;
};

// Summary of x(t) over the analysis window.
struct SignalStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

SignalStats signal_stats(std::span<const double> x);

struct AttractorSettings {
  double rel_tol = 1e-3;             // cluster merge distance, relative to peak range
  double abs_tol = 1e-4;             // cluster merge distance, absolute floor
  double prominence_factor = 1e-4;   // min_prominence = factor * max|x| over window
  double fixed_point_range = 1e-6;   // x range below which the orbit is stationary

  bool operator==(const AttractorSettings&) const = default;
};

// Decision order: unbounded if diverged; fixed_point if there are no peaks or
// the window's x range is below fixed_point_range and the MLE is negative or
// zero; chaotic if the MLE is positive (bounded); period_n when the MLE is
// negative/zero and the cluster sequence is cyclic; indeterminate otherwise.
AttractorLabel classify(const PeakSet& peaks, const SignalStats& window, const MleEstimate& mle,
                        bool diverged, const AttractorSettings& settings = {});

}  // namespace qomchaos

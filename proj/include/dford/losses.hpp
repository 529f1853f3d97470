#pragma once

#include <optional>

#include "dford/model.hpp"

namespace dford {

/// Contiguous candidate label set [lo, hi]; the true label is guaranteed
/// to lie inside.
struct IntervalLabel {
  int lo = 1;
  int hi = 1;

  IntervalLabel(int lo_, int hi_, int k);
};

/// Per-threshold sign for a known label: +1 below y, -1 at or above
/// (indices 1..K).
inline double full_info_label(int i, int y) { return i < y ? 1.0 : -1.0; }

/// Absolute-error loss counted threshold by threshold; equals
/// |predict - y| whenever the thresholds are sorted. Range [0, K-1].
int mae_loss(double score, const Thresholds& th, int y);

/// Hinge surrogate sum_i [-z_i (score - theta_i)]_+ over i in [K-1]
/// (the theta_K = +inf term is identically zero).
double hinge_loss(double score, const Thresholds& th, int y);

/// (lambda/2)(|w|^2 + |theta|^2) + hinge. `param_sqnorm` is |w|^2 (or
/// the RKHS square norm for kernel models).
double regularized_loss(double score, const Thresholds& th, int y, double lambda,
                        double param_sqnorm);
double regularized_loss(const OrdinalModel& model, const Vec& x, int y, double lambda);

/// Interval hinge with z_i = I[i < lo] - I[hi <= i <= K].
double interval_hinge_loss(double score, const Thresholds& th, const IntervalLabel& iv);

/// Number of unordered adjacent pairs: #{i : theta_{i+1} < theta_i}.
int violation_count(const Thresholds& th);

/// One recorded point of a run.
struct MetricsSnapshot {
  long t = 0;                  // examples processed so far
  double mean_mae = 0.0;       // cumulative MAE / t
  double inst_mae = 0.0;       // MAE of the step at t
  double cum_reg_loss = 0.0;   // running sum of the regularized surrogate
  long violations = 0;         // cumulative unordered-pair count
  std::optional<Vec> thetas;   // copy for ordering analysis, when requested
};

}  // namespace dford

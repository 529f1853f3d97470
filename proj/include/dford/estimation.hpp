#pragma once

#include "dford/losses.hpp"
#include "dford/model.hpp"
#include "dford/sampling.hpp"

namespace dford {

/// The single bit the learner receives: whether the queried label sits
/// strictly below the true label.
struct DirectionalFeedback {
  int sampled = 1;      // the label that was queried
  bool below = false;   // I[sampled < y_true]
};

/// Importance-weighted estimates built from one feedback bit. Both
/// vectors have length K and at most one nonzero entry (at `sampled`);
/// the entry at index K of tau is always zero because theta_K = +inf
/// never yields an active constraint.
struct EstimatedLabels {
  Vec z_tilde;
  Vec tau_tilde;
  int sampled = 1;

  double z_at_sampled() const { return z_tilde[static_cast<std::size_t>(sampled - 1)]; }
  double tau_at_sampled() const { return tau_tilde[static_cast<std::size_t>(sampled - 1)]; }
};

/// z_tilde_i = (2d-1) I[i = sampled] / P(i);
/// tau_tilde_i = z_tilde_i I[z_tilde_i (score - theta_i) <= 0], with the
/// constraint counting as active at exact equality.
EstimatedLabels estimate_labels(const LabelDistribution& dist, const DirectionalFeedback& fb,
                                double score, const Thresholds& th);

/// Stochastic gradient of the regularized hinge at (w, theta):
/// d_w = lambda w - (sum_i tau_i) x, d_theta_i = lambda theta_i + tau_i.
struct GradientEstimate {
  Vec d_w;
  Vec d_theta;

  double sq_norm() const { return sqnorm(d_w) + sqnorm(d_theta); }
};

GradientEstimate gradient_estimate_linear(const LinearScorer& scorer, const Thresholds& th,
                                          const Vec& x, const EstimatedLabels& est,
                                          double lambda);

/// Scale factor that caps a gradient of the given norm at alpha.
/// Conditional by default: 1 when norm <= alpha. `unconditional` forces
/// the literal alpha/norm rescale. Zero norm returns 1 either way.
double clip_factor(double norm, double alpha, bool unconditional = false);

GradientEstimate clip(GradientEstimate grad, double alpha, bool unconditional = false);

}  // namespace dford

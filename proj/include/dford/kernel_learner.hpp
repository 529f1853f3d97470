#pragma once

#include <cstdint>
#include <deque>

#include "dford/estimation.hpp"
#include "dford/feedback.hpp"
#include "dford/linear_learner.hpp"
#include "dford/model.hpp"
#include "dford/rng.hpp"

namespace dford {

struct KernelLearnerConfig {
  int k = 2;
  double lambda = 1.0;
  double gamma = 0.2;
  double alpha = 0.0;  // 0 disables gradient clipping
  bool unconditional_clip = false;
  KernelSpec kernel;
  long delta = 0;  // truncation window; 0 = unbounded
  std::uint64_t seed = 1;
  // |f|^2_H bookkeeping is needed for clipping and for surrogate-loss
  // metrics; switch it off to get the bare <= delta+1 evaluations/step.
  bool track_rkhs_norm = true;
  long gram_refresh_every = 10000;  // full recompute cadence, caps drift
};

/// Online kernel ordinal regression from directional feedback.
/// f is kept in the closed form (1/(lambda t)) * sum of tau * k(x_i, .)
/// over the last delta+1 trials: the outer scale lives apart from the
/// coefficients, so truncation just drops expired terms. Zero-tau trials
/// are never stored. theta is updated exactly like the linear learner.
class KernelLearner {
 public:
  explicit KernelLearner(const KernelLearnerConfig& cfg);

  StepOutcome step(const Vec& x, const DirectionalOracle& oracle);
  StepOutcome apply_feedback(const Vec& x, int sampled, bool below);

  /// f^t(x) with the current trial's scale 1/(lambda (t-1)).
  double evaluate(const Vec& x) const;

  const Thresholds& thresholds() const { return thresholds_; }
  long trial() const { return trial_; }
  int k() const { return cfg_.k; }
  const KernelLearnerConfig& config() const { return cfg_; }

  double scale() const;                    // 1/(lambda (t-1))
  long support_size() const { return static_cast<long>(support_.size()); }
  double rkhs_sqnorm() const;              // |f^t|^2_H, tracked incrementally
  double rkhs_sqnorm_dense() const;        // from-scratch Gram recompute
  long kernel_eval_count() const { return kernel_evals_; }

  /// Snapshot of the expansion (tests, inspection).
  KernelScorer scorer() const;

 private:
  double kernel_eval(const Vec& a, const Vec& b) const;
  void drop_expired();
  void refresh_gram();

  KernelLearnerConfig cfg_;
  std::deque<KernelScorer::Term> support_;
  Thresholds thresholds_;
  long trial_;
  Rng rng_;
  double gram_sum_ = 0.0;  // sum_ij c_i c_j k(a_i, a_j), without the scale
  mutable long kernel_evals_ = 0;
};

}  // namespace dford

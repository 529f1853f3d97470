#pragma once

#include "dford/feedback.hpp"
#include "dford/linear_learner.hpp"
#include "dford/losses.hpp"
#include "dford/model.hpp"

namespace dford {

/// Candidate label set implied by one directional bit on y_hat:
/// below=true -> [y_hat+1, K], below=false -> [1, y_hat].
IntervalLabel directional_to_interval(int y_hat, bool below, int k);

/// Regularized PRank: full-information SGD on the hinge surrogate with
/// eta_t = 1/(lambda t), trial counter starting at 1. The first step's
/// (1 - eta_1 lambda) = 0 zeroes stale parameters, harmless from zero
/// init.
class PrankLearner {
 public:
  PrankLearner(int k, int dim, double lambda);

  void step(const Vec& x, int y_true);

  const LinearScorer& scorer() const { return scorer_; }
  const Thresholds& thresholds() const { return thresholds_; }
  long trial() const { return trial_; }
  int k() const { return k_; }
  double lambda() const { return lambda_; }
  double weight_sqnorm() const { return sqnorm(scorer_.w); }

 private:
  int k_;
  double lambda_;
  LinearScorer scorer_;
  Thresholds thresholds_;
  long trial_;
};

/// Regularized PRIL driven by directional feedback: the deterministic
/// prediction y_hat elicits the bit (no sampling - the experimental
/// contrast with the sampled-query learners), the bit becomes an
/// interval label, and the step is SGD on the interval hinge.
class PrilLearner {
 public:
  PrilLearner(int k, int dim, double lambda);

  StepOutcome step(const Vec& x, const DirectionalOracle& oracle);

  const LinearScorer& scorer() const { return scorer_; }
  const Thresholds& thresholds() const { return thresholds_; }
  long trial() const { return trial_; }
  int k() const { return k_; }
  double lambda() const { return lambda_; }
  double weight_sqnorm() const { return sqnorm(scorer_.w); }

 private:
  int k_;
  double lambda_;
  LinearScorer scorer_;
  Thresholds thresholds_;
  long trial_;
};

}  // namespace dford

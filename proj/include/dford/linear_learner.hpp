#pragma once

#include <cstdint>

#include "dford/estimation.hpp"
#include "dford/feedback.hpp"
#include "dford/model.hpp"
#include "dford/rng.hpp"

namespace dford {

struct LinearLearnerConfig {
  int k = 2;
  int dim = 1;
  double lambda = 1.0;
  double gamma = 0.2;
  double alpha = 0.0;  // 0 disables gradient clipping
  bool unconditional_clip = false;
  std::uint64_t seed = 1;
};

/// What one online step produced, for the harness. The learner itself
/// never sees the true label.
struct StepOutcome {
  double score = 0.0;  // f(x) before the update
  int predicted = 1;   // deterministic label y_hat
  int sampled = 1;     // queried label y_tilde
  bool below = false;  // feedback bit
};

/// Online linear ordinal regression from directional feedback.
/// Per trial: predict, sample a query label from the explore-exploit
/// mixture, turn the feedback bit into the importance-weighted tau
/// estimate, then take a Pegasos-style step with eta_t = 1/(lambda t).
/// The trial counter starts at 2, so (1 - eta_t lambda) >= 1/2 always.
class LinearLearner {
 public:
  explicit LinearLearner(const LinearLearnerConfig& cfg);

  StepOutcome step(const Vec& x, const DirectionalOracle& oracle);

  /// Deterministic core: applies the update for an externally chosen
  /// (sampled, below) pair. step() delegates here after sampling.
  StepOutcome apply_feedback(const Vec& x, int sampled, bool below);

  const LinearScorer& scorer() const { return scorer_; }
  const Thresholds& thresholds() const { return thresholds_; }
  long trial() const { return trial_; }
  int k() const { return cfg_.k; }
  const LinearLearnerConfig& config() const { return cfg_; }
  double weight_sqnorm() const { return sqnorm(scorer_.w); }

 private:
  LinearLearnerConfig cfg_;
  LinearScorer scorer_;
  Thresholds thresholds_;
  long trial_;
  Rng rng_;
};

}  // namespace dford

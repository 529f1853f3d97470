#include "dford/linear_learner.hpp"

namespace dford {

LinearLearner::LinearLearner(const LinearLearnerConfig& cfg)
    : cfg_(cfg),
      scorer_{Vec(static_cast<std::size_t>(cfg.dim), 0.0)},
      thresholds_(Thresholds::zeros(cfg.k)),
      trial_(2),
      rng_(cfg.seed) {
  if (cfg.k < 2) throw InputError("LinearLearner: K must be >= 2");
  if (cfg.dim < 1) throw InputError("LinearLearner: dim must be >= 1");
  if (!(cfg.lambda > 0)) throw InputError("LinearLearner: lambda must be > 0");
  if (!(cfg.gamma >= 0 && cfg.gamma <= 1)) throw InputError("LinearLearner: gamma outside [0, 1]");
  if (cfg.alpha < 0) throw InputError("LinearLearner: alpha must be >= 0");
}

StepOutcome LinearLearner::step(const Vec& x, const DirectionalOracle& oracle) {
  if (static_cast<int>(x.size()) != cfg_.dim) throw InputError("LinearLearner: dimension mismatch");
  double s = dot(scorer_.w, x);
  int y_hat = predict_from_score(s, thresholds_);
  LabelDistribution dist = mixture(cfg_.k, y_hat, cfg_.gamma);
  int sampled = sample(dist, rng_);
  return apply_feedback(x, sampled, oracle.below(sampled));
}

StepOutcome LinearLearner::apply_feedback(const Vec& x, int sampled, bool below) {
  if (static_cast<int>(x.size()) != cfg_.dim) throw InputError("LinearLearner: dimension mismatch");
  double s = dot(scorer_.w, x);
  int y_hat = predict_from_score(s, thresholds_);
  LabelDistribution dist = mixture(cfg_.k, y_hat, cfg_.gamma);

  EstimatedLabels est = estimate_labels(dist, {sampled, below}, s, thresholds_);
  double eta = 1.0 / (cfg_.lambda * static_cast<double>(trial_));
  Vec& w = scorer_.w;
  Vec& th = thresholds_.mutable_values();

  if (cfg_.alpha > 0) {
    GradientEstimate g = clip(gradient_estimate_linear(scorer_, thresholds_, x, est, cfg_.lambda),
                              cfg_.alpha, cfg_.unconditional_clip);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= eta * g.d_w[j];
    for (std::size_t i = 0; i < th.size(); ++i) th[i] -= eta * g.d_theta[i];
  } else {
    double tau = est.tau_at_sampled();
    double shrink = 1.0 - eta * cfg_.lambda;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = shrink * w[j] + eta * tau * x[j];
    for (std::size_t i = 0; i < th.size(); ++i) th[i] *= shrink;
    if (sampled <= cfg_.k - 1) th[static_cast<std::size_t>(sampled - 1)] -= eta * tau;
  }

  if (!all_finite(w) || !all_finite(th))
    throw NumericError("LinearLearner: parameters diverged", trial_);
  ++trial_;
  return {s, y_hat, sampled, below};
}

}  // namespace dford

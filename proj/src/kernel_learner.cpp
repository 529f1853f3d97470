#include "dford/kernel_learner.hpp"

#include <cmath>

namespace dford {

KernelLearner::KernelLearner(const KernelLearnerConfig& cfg)
    : cfg_(cfg), thresholds_(Thresholds::zeros(cfg.k)), trial_(2), rng_(cfg.seed) {
  if (cfg.k < 2) throw InputError("KernelLearner: K must be >= 2");
  if (!(cfg.lambda > 0)) throw InputError("KernelLearner: lambda must be > 0");
  if (!(cfg.gamma >= 0 && cfg.gamma <= 1)) throw InputError("KernelLearner: gamma outside [0, 1]");
  if (cfg.delta < 0) throw InputError("KernelLearner: delta must be >= 1 (0 = unbounded)");
  if (cfg.alpha > 0 && !cfg.track_rkhs_norm)
    throw InputError("KernelLearner: clipping needs track_rkhs_norm");
}

double KernelLearner::kernel_eval(const Vec& a, const Vec& b) const {
  ++kernel_evals_;
  return cfg_.kernel.eval(a, b);
}

double KernelLearner::scale() const {
  return 1.0 / (cfg_.lambda * static_cast<double>(trial_ - 1));
}

double KernelLearner::evaluate(const Vec& x) const {
  double s = 0.0;
  for (const auto& term : support_) s += term.coeff * kernel_eval(term.anchor, x);
  s *= scale();
  if (!std::isfinite(s)) throw NumericError("KernelLearner: non-finite score", trial_);
  return s;
}

double KernelLearner::rkhs_sqnorm() const {
  double sc = scale();
  return sc * sc * gram_sum_;
}

double KernelLearner::rkhs_sqnorm_dense() const {
  double g = 0.0;
  for (const auto& a : support_)
    for (const auto& b : support_) g += a.coeff * b.coeff * kernel_eval(a.anchor, b.anchor);
  double sc = scale();
  return sc * sc * g;
}

void KernelLearner::refresh_gram() {
  double g = 0.0;
  for (const auto& a : support_)
    for (const auto& b : support_) g += a.coeff * b.coeff * kernel_eval(a.anchor, b.anchor);
  gram_sum_ = g;
}

void KernelLearner::drop_expired() {
  if (cfg_.delta <= 0) return;
  long cutoff = trial_ - cfg_.delta;  // window [max(first, t - delta), t]
  while (!support_.empty() && support_.front().trial < cutoff) {
    const auto& old = support_.front();
    if (cfg_.track_rkhs_norm) {
      double cross = 0.0;
      for (std::size_t j = 1; j < support_.size(); ++j)
        cross += support_[j].coeff * kernel_eval(support_[j].anchor, old.anchor);
      gram_sum_ -= old.coeff * old.coeff * kernel_eval(old.anchor, old.anchor) +
                   2.0 * old.coeff * cross;
    }
    support_.pop_front();
  }
  if (!support_.empty() &&
      (support_.front().trial < std::max(2L, cutoff) || support_.back().trial > trial_))
    throw InternalError("KernelLearner: truncation buffer out of window");
}

StepOutcome KernelLearner::step(const Vec& x, const DirectionalOracle& oracle) {
  double s = evaluate(x);
  int y_hat = predict_from_score(s, thresholds_);
  LabelDistribution dist = mixture(cfg_.k, y_hat, cfg_.gamma);
  int sampled = sample(dist, rng_);
  return apply_feedback(x, sampled, oracle.below(sampled));
}

StepOutcome KernelLearner::apply_feedback(const Vec& x, int sampled, bool below) {
  double s = evaluate(x);
  int y_hat = predict_from_score(s, thresholds_);
  LabelDistribution dist = mixture(cfg_.k, y_hat, cfg_.gamma);

  EstimatedLabels est = estimate_labels(dist, {sampled, below}, s, thresholds_);
  double tau = est.tau_at_sampled();
  double eta = 1.0 / (cfg_.lambda * static_cast<double>(trial_));
  Vec& th = thresholds_.mutable_values();

  double c = 1.0;
  if (cfg_.alpha > 0) {
    // |g|^2 = |lambda f - tau k(x,.)|^2_H + |lambda theta + tau e|^2,
    // expanded through the reproducing property: f(x) and k(x,x) suffice.
    double lam = cfg_.lambda;
    double g2 = lam * lam * rkhs_sqnorm();
    if (tau != 0.0) g2 += tau * tau * kernel_eval(x, x) - 2.0 * lam * tau * s;
    for (std::size_t i = 0; i < th.size(); ++i) {
      double gi = lam * th[i] + (static_cast<int>(i) + 1 == sampled ? tau : 0.0);
      g2 += gi * gi;
    }
    c = clip_factor(std::sqrt(std::max(0.0, g2)), cfg_.alpha, cfg_.unconditional_clip);
  }

  // theta step, identical shape to the linear learner.
  double shrink = 1.0 - eta * cfg_.lambda * c;
  for (std::size_t i = 0; i < th.size(); ++i) th[i] *= shrink;
  if (sampled <= cfg_.k - 1) th[static_cast<std::size_t>(sampled - 1)] -= eta * c * tau;
  if (!all_finite(th)) throw NumericError("KernelLearner: thresholds diverged", trial_);

  // f step. Unclipped, the scale change 1/(lambda(t-1)) -> 1/(lambda t)
  // absorbs the (1 - eta lambda) damping exactly and coefficients stay
  // the raw tau values. A clipped step (c < 1) additionally rescales the
  // surviving coefficients by (t - c)/(t - 1).
  double f_over_scale = 0.0;  // sum_j c_j k(a_j, x), for the Gram update
  if (cfg_.track_rkhs_norm && tau != 0.0) f_over_scale = s / scale();
  if (c != 1.0) {
    double rho = (static_cast<double>(trial_) - c) / static_cast<double>(trial_ - 1);
    for (auto& term : support_) term.coeff *= rho;
    gram_sum_ *= rho * rho;
    f_over_scale *= rho;
  }
  if (tau != 0.0) {
    double coeff = c * tau;
    if (cfg_.track_rkhs_norm)
      gram_sum_ += coeff * coeff * kernel_eval(x, x) + 2.0 * coeff * f_over_scale;
    support_.push_back({trial_, coeff, x});
  }
  drop_expired();

  ++trial_;
  if (cfg_.track_rkhs_norm && cfg_.gram_refresh_every > 0 &&
      trial_ % cfg_.gram_refresh_every == 0)
    refresh_gram();
  return {s, y_hat, sampled, below};
}

KernelScorer KernelLearner::scorer() const {
  KernelScorer ks;
  ks.kernel = cfg_.kernel;
  ks.scale = scale();
  ks.support.assign(support_.begin(), support_.end());
  return ks;
}

}  // namespace dford

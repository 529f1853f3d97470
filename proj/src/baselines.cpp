#include "dford/baselines.hpp"

namespace dford {

IntervalLabel directional_to_interval(int y_hat, bool below, int k) {
  if (y_hat < 1 || y_hat > k) throw InputError("directional_to_interval: y_hat out of [1, K]");
  if (below) {
    if (y_hat == k)
      throw InputError("directional_to_interval: below=true with y_hat=K is impossible feedback");
    return IntervalLabel(y_hat + 1, k, k);
  }
  return IntervalLabel(1, y_hat, k);
}

namespace {

// Shared SGD step on the hinge with per-threshold labels z_i, i in [K-1]:
// w <- (1 - eta lambda) w + eta (sum tau_i) x; theta_i <- (1 - eta lambda) theta_i - eta tau_i.
void hinge_sgd_step(LinearScorer& scorer, Thresholds& th, const Vec& x, double lambda, long trial,
                    const Vec& z) {
  double f = dot(scorer.w, x);
  double eta = 1.0 / (lambda * static_cast<double>(trial));
  double shrink = 1.0 - eta * lambda;
  Vec& tv = th.mutable_values();
  double tau_sum = 0.0;
  for (std::size_t i = 0; i < tv.size(); ++i) {
    double zi = z[i];
    double tau = (zi != 0.0 && zi * (f - tv[i]) <= 0.0) ? zi : 0.0;
    tau_sum += tau;
    tv[i] = shrink * tv[i] - eta * tau;
  }
  for (std::size_t j = 0; j < scorer.w.size(); ++j)
    scorer.w[j] = shrink * scorer.w[j] + eta * tau_sum * x[j];
  if (!all_finite(scorer.w) || !all_finite(tv))
    throw NumericError("hinge_sgd_step: parameters diverged", trial);
}

}  // namespace

PrankLearner::PrankLearner(int k, int dim, double lambda)
    : k_(k),
      lambda_(lambda),
      scorer_{Vec(static_cast<std::size_t>(dim), 0.0)},
      thresholds_(Thresholds::zeros(k)),
      trial_(1) {
  if (!(lambda > 0)) throw InputError("PrankLearner: lambda must be > 0");
}

void PrankLearner::step(const Vec& x, int y_true) {
  if (y_true < 1 || y_true > k_) throw InputError("PrankLearner: label out of [1, K]");
  if (static_cast<int>(x.size()) != scorer_.dim()) throw InputError("PrankLearner: dimension mismatch");
  Vec z(static_cast<std::size_t>(k_ - 1));
  for (int i = 1; i <= k_ - 1; ++i) z[static_cast<std::size_t>(i - 1)] = full_info_label(i, y_true);
  hinge_sgd_step(scorer_, thresholds_, x, lambda_, trial_, z);
  ++trial_;
}

PrilLearner::PrilLearner(int k, int dim, double lambda)
    : k_(k),
      lambda_(lambda),
      scorer_{Vec(static_cast<std::size_t>(dim), 0.0)},
      thresholds_(Thresholds::zeros(k)),
      trial_(1) {
  if (!(lambda > 0)) throw InputError("PrilLearner: lambda must be > 0");
}

StepOutcome PrilLearner::step(const Vec& x, const DirectionalOracle& oracle) {
  if (static_cast<int>(x.size()) != scorer_.dim()) throw InputError("PrilLearner: dimension mismatch");
  double f = dot(scorer_.w, x);
  int y_hat = predict_from_score(f, thresholds_);
  bool d = oracle.below(y_hat);
  IntervalLabel iv = directional_to_interval(y_hat, d, k_);
  Vec z(static_cast<std::size_t>(k_ - 1), 0.0);
  for (int i = 1; i <= k_ - 1; ++i) {
    if (i < iv.lo) z[static_cast<std::size_t>(i - 1)] = 1.0;
    else if (i >= iv.hi) z[static_cast<std::size_t>(i - 1)] = -1.0;
  }
  hinge_sgd_step(scorer_, thresholds_, x, lambda_, trial_, z);
  ++trial_;
  return {f, y_hat, y_hat, d};
}

}  // namespace dford

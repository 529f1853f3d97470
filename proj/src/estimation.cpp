#include "dford/estimation.hpp"

#include <cmath>

namespace dford {

EstimatedLabels estimate_labels(const LabelDistribution& dist, const DirectionalFeedback& fb,
                                double score, const Thresholds& th) {
  int k = dist.k();
  if (k != th.k()) throw InputError("estimate_labels: K mismatch");
  if (fb.sampled < 1 || fb.sampled > k) throw InputError("estimate_labels: sampled label out of range");
  double p = dist[fb.sampled];
  if (!(p > 0.0))
    throw InternalError("estimate_labels: sampled label has zero probability");

  EstimatedLabels est;
  est.sampled = fb.sampled;
  est.z_tilde.assign(static_cast<std::size_t>(k), 0.0);
  est.tau_tilde.assign(static_cast<std::size_t>(k), 0.0);

  double z = (fb.below ? 1.0 : -1.0) / p;
  est.z_tilde[static_cast<std::size_t>(fb.sampled - 1)] = z;
  if (fb.sampled <= k - 1 && z * (score - th[fb.sampled - 1]) <= 0.0)
    est.tau_tilde[static_cast<std::size_t>(fb.sampled - 1)] = z;
  return est;
}

GradientEstimate gradient_estimate_linear(const LinearScorer& scorer, const Thresholds& th,
                                          const Vec& x, const EstimatedLabels& est,
                                          double lambda) {
  if (scorer.dim() != static_cast<int>(x.size()))
    throw InputError("gradient_estimate_linear: dimension mismatch");
  if (static_cast<int>(est.tau_tilde.size()) != th.k())
    throw InputError("gradient_estimate_linear: K mismatch");

  double tau_sum = 0.0;
  for (double t : est.tau_tilde) tau_sum += t;

  GradientEstimate g;
  g.d_w.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) g.d_w[j] = lambda * scorer.w[j] - tau_sum * x[j];
  int km1 = th.k() - 1;
  g.d_theta.resize(static_cast<std::size_t>(km1));
  for (int i = 0; i < km1; ++i)
    g.d_theta[static_cast<std::size_t>(i)] = lambda * th[i] + est.tau_tilde[static_cast<std::size_t>(i)];
  return g;
}

double clip_factor(double norm, double alpha, bool unconditional) {
  if (!(alpha > 0.0)) throw InputError("clip: alpha must be > 0");
  if (norm == 0.0) return 1.0;
  if (unconditional || norm > alpha) return alpha / norm;
  return 1.0;
}

GradientEstimate clip(GradientEstimate grad, double alpha, bool unconditional) {
  double c = clip_factor(std::sqrt(grad.sq_norm()), alpha, unconditional);
  if (c != 1.0) {
    for (double& v : grad.d_w) v *= c;
    for (double& v : grad.d_theta) v *= c;
  }
  return grad;
}

}  // namespace dford

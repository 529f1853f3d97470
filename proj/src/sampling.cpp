#include "dford/sampling.hpp"

#include <cmath>
#include <cstdlib>

namespace dford {

namespace {
void check_label(int k, int y_hat) {
  if (k < 2) throw InputError("sampling: K must be >= 2");
  if (y_hat < 1 || y_hat > k) throw InputError("sampling: y_hat out of [1, K]");
}
}  // namespace

long exploration_weight(int k, int y_hat, int label) {
  check_label(k, y_hat);
  if (label < 1 || label > k) throw InputError("sampling: label out of [1, K]");
  long dmax = std::max(y_hat, k - y_hat);
  return 1 + dmax - std::labs(static_cast<long>(label) - y_hat);
}

long normalizer(int k, int y_hat) {
  check_label(k, y_hat);
  long kk = k, yh = y_hat;
  if (2 * yh >= kk) return (2 * kk + 1) * yh - yh * yh - kk * (kk - 1) / 2;
  return kk * (kk + 1) / 2 - yh * (yh - 1);
}

Vec exploration_weights(int k, int y_hat) {
  long z = normalizer(k, y_hat);
  Vec p(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i)
    p[static_cast<std::size_t>(i - 1)] =
        static_cast<double>(exploration_weight(k, y_hat, i)) / static_cast<double>(z);
  return p;
}

LabelDistribution mixture(int k, int y_hat, double gamma) {
  check_label(k, y_hat);
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InputError("mixture: gamma outside [0, 1]");
  LabelDistribution dist;
  dist.predicted = y_hat;
  dist.gamma = gamma;
  if (gamma == 0.0) {
    dist.probs.assign(static_cast<std::size_t>(k), 0.0);
  } else {
    dist.probs = exploration_weights(k, y_hat);
    for (double& p : dist.probs) p *= gamma;
  }
  dist.probs[static_cast<std::size_t>(y_hat - 1)] += 1.0 - gamma;
  return dist;
}

int sample(const LabelDistribution& dist, Rng& rng) {
  double u = rng.uniform();
  double cdf = 0.0;
  int k = dist.k();
  for (int i = 1; i <= k; ++i) {
    cdf += dist[i];
    if (u < cdf) return i;
  }
  // u landed past the accumulated mass (rounding): return the last label
  // with nonzero probability.
  for (int i = k; i >= 1; --i)
    if (dist[i] > 0.0) return i;
  throw InternalError("sample: empty distribution");
}

}  // namespace dford

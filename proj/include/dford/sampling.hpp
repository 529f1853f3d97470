#pragma once

#include <cstdint>

#include "dford/common.hpp"
#include "dford/rng.hpp"

namespace dford {

/// Explore-exploit label distribution: point mass at the predicted label
/// mixed with a linearly decaying exploration profile. probs is unimodal
/// with its mode at `predicted`; every label has positive probability
/// whenever gamma > 0.
struct LabelDistribution {
  Vec probs;
  int predicted = 1;
  double gamma = 0.0;

  int k() const { return static_cast<int>(probs.size()); }
  double operator[](int label) const { return probs[static_cast<std::size_t>(label - 1)]; }
};

/// Unnormalized exploration weight of label i around y_hat:
/// 1 + d_max - |i - y_hat| with d_max = max(y_hat, K - y_hat).
/// Always a positive integer.
long exploration_weight(int k, int y_hat, int label);

/// Normalization constant, closed form. Exactly equals the brute-force
/// sum of the integer weights (two branches on 2*y_hat vs K).
long normalizer(int k, int y_hat);

/// Exploration distribution: weight(i)/Z for each label.
Vec exploration_weights(int k, int y_hat);

/// (1-gamma) * point-mass(y_hat) + gamma * exploration_weights.
LabelDistribution mixture(int k, int y_hat, double gamma);

/// Inverse-CDF draw. K is small everywhere we run, so no alias table.
int sample(const LabelDistribution& dist, Rng& rng);

}  // namespace dford

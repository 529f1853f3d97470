#pragma once

#include <cstdint>
#include <string>

#include "dford/model.hpp"
#include "dford/sampling.hpp"

namespace dford {
namespace oracle {

// Brute-force verifiers for the expectation-level claims. Everything
// here re-derives the estimator formulas from scratch - the only shared
// code with the estimation module is the mixture constructor - so a bug
// there cannot hide from a bug here.

/// Enumerated E[z-tilde]: sum over the K possible queried labels of
/// P(query) * estimate, with the feedback bit resolved against y_true.
/// Must equal the full-information labels (+1 below y_true, -1 at or
/// above).
Vec exact_expectation_z(int k, int y_true, int y_hat, double gamma, double score,
                        const Thresholds& th);

/// Enumerated E[tau-tilde]; must equal tau_i = z_i I[z_i(score - theta_i) <= 0]
/// for i in [K-1] and 0 at index K.
Vec exact_expectation_tau(int k, int y_true, int y_hat, double gamma, double score,
                          const Thresholds& th);

struct GradientPair {
  Vec d_w;
  Vec d_theta;
};

/// Enumerated E[g] of the stochastic gradient around (scorer, th) at x.
GradientPair exact_expectation_gradient(const LinearScorer& scorer, const Thresholds& th,
                                        const Vec& x, int y_true, double gamma, double lambda);

/// Analytic subgradient of the regularized hinge, active branch at kinks.
GradientPair analytic_subgradient(const LinearScorer& scorer, const Thresholds& th, const Vec& x,
                                  int y_true, double lambda);

/// Central finite differences of the regularized hinge; only meaningful
/// away from kinks.
GradientPair finite_difference_gradient(const LinearScorer& scorer, const Thresholds& th,
                                        const Vec& x, int y_true, double lambda,
                                        double h = 1e-5);

/// True when every margin |score - theta_i| clears the given slack, so
/// finite differences cannot straddle a hinge kink.
bool kink_free(const LinearScorer& scorer, const Thresholds& th, const Vec& x, double margin);

struct BoundCheck {
  std::string name;
  double worst_ratio = 0.0;  // max over the sweep of observed / bound
  long violations = 0;       // cases with observed > bound (+ slack where statistical)
  long cases = 0;
  bool pass = true;
};

struct BoundReport {
  std::vector<BoundCheck> checks;
  bool all_pass() const;
  std::string to_string() const;
};

struct BoundCheckConfig {
  int k_min = 2;
  int k_max = 8;
  Vec gammas = {0.2, 0.4, 0.6, 0.8};
  int random_draws = 50;       // (score, theta) draws per (K, y, y_hat, gamma)
  std::uint64_t seed = 20240901;
  // Trajectory checks (norm bounds along DFORD-Linear runs).
  bool trajectories = true;
  int trajectory_seeds = 10;
  long trajectory_iters = 2000;
};

/// Enumerable bounds (E|tau| <= K, E[tau^2] and sum 1/P against
/// (2K^2/gamma)(1+ln K)) plus sample-mean norm bounds along bounded-data
/// runs.
BoundReport bound_checks(const BoundCheckConfig& cfg);

}  // namespace oracle
}  // namespace dford

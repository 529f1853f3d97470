#pragma once

#include <memory>
#include <string>

#include "dford/baselines.hpp"
#include "dford/data.hpp"
#include "dford/kernel_learner.hpp"
#include "dford/linear_learner.hpp"
#include "dford/losses.hpp"

namespace dford {

/// Runner-facing view of any online learner. Adapters hand the harness
/// feedback source to each algorithm in the shape it is allowed to see.
class OnlineAlgo {
 public:
  virtual ~OnlineAlgo() = default;
  virtual std::string name() const = 0;
  virtual double lambda() const = 0;
  virtual StepOutcome process(const Vec& x, const FeedbackSource& fb) = 0;
  virtual const Thresholds& thresholds() const = 0;
  virtual double scorer_sqnorm() const = 0;  // |w|^2 or |f|^2_H
  virtual long support_size() const { return 0; }
};

struct AlgoSpec {
  std::string name = "dford-linear";  // dford-linear | dford-kernel | prank | pril
  double lambda = 1.0;
  double gamma = 0.2;
  double alpha = 0.0;
  bool unconditional_clip = false;
  KernelSpec kernel;
  long delta = 0;  // 0 = unbounded
};

/// Builds the named learner. `policy_seed` drives only the learner's own
/// label sampling; the example stream is seeded separately so every
/// algorithm sees the identical stream for a given run seed.
std::unique_ptr<OnlineAlgo> make_algo(const AlgoSpec& spec, int k, int dim,
                                      std::uint64_t policy_seed);

struct RunOptions {
  long iters = 100000;
  int cadence = 1000;         // checkpoint every this many examples
  bool record_thetas = false; // keep a theta copy per checkpoint
  bool mae_on_sampled = false;// score the queried label instead of the rule
};

struct RunRecord {
  std::string algo;
  std::uint64_t seed = 0;
  std::string rng_algorithm = Rng::kAlgorithmId;
  std::vector<MetricsSnapshot> checkpoints;
  double final_mean_mae = 0.0;
  long total_violations = 0;
  long peak_support = 0;     // kernel expansion high-water mark
  double wall_time_ms = 0.0; // excluded from determinism comparisons
};

/// Streams `iters` uniformly resampled examples through the learner,
/// recording MAE / surrogate loss / threshold violations. Metrics use
/// the pre-update parameters; only the feedback adapter ever sees the
/// label.
RunRecord run_online(OnlineAlgo& algo, const Dataset& data, std::uint64_t seed,
                     const RunOptions& opt);

/// Convenience wrapper: build + run a fresh learner.
RunRecord run_algo(const AlgoSpec& spec, const Dataset& data, std::uint64_t seed,
                   const RunOptions& opt);

}  // namespace dford

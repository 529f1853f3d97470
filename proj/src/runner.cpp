#include "dford/runner.hpp"

#include <chrono>
#include <cmath>

namespace dford {

namespace {

class DfordLinearAlgo final : public OnlineAlgo {
 public:
  DfordLinearAlgo(const AlgoSpec& spec, int k, int dim, std::uint64_t policy_seed)
      : learner_({k, dim, spec.lambda, spec.gamma, spec.alpha, spec.unconditional_clip,
                  policy_seed}) {}
  std::string name() const override { return "dford-linear"; }
  double lambda() const override { return learner_.config().lambda; }
  StepOutcome process(const Vec& x, const FeedbackSource& fb) override {
    return learner_.step(x, fb);  // sliced to the directional view
  }
  const Thresholds& thresholds() const override { return learner_.thresholds(); }
  double scorer_sqnorm() const override { return learner_.weight_sqnorm(); }

 private:
  LinearLearner learner_;
};

class DfordKernelAlgo final : public OnlineAlgo {
 public:
  DfordKernelAlgo(const AlgoSpec& spec, int k, std::uint64_t policy_seed)
      : learner_([&] {
          KernelLearnerConfig cfg;
          cfg.k = k;
          cfg.lambda = spec.lambda;
          cfg.gamma = spec.gamma;
          cfg.alpha = spec.alpha;
          cfg.unconditional_clip = spec.unconditional_clip;
          cfg.kernel = spec.kernel;
          cfg.delta = spec.delta;
          cfg.seed = policy_seed;
          return cfg;
        }()) {}
  std::string name() const override { return "dford-kernel"; }
  double lambda() const override { return learner_.config().lambda; }
  StepOutcome process(const Vec& x, const FeedbackSource& fb) override {
    return learner_.step(x, fb);
  }
  const Thresholds& thresholds() const override { return learner_.thresholds(); }
  double scorer_sqnorm() const override { return learner_.rkhs_sqnorm(); }
  long support_size() const override { return learner_.support_size(); }

 private:
  KernelLearner learner_;
};

class PrankAlgo final : public OnlineAlgo {
 public:
  PrankAlgo(const AlgoSpec& spec, int k, int dim) : learner_(k, dim, spec.lambda) {}
  std::string name() const override { return "prank"; }
  double lambda() const override { return learner_.lambda(); }
  StepOutcome process(const Vec& x, const FeedbackSource& fb) override {
    double s = dot(learner_.scorer().w, x);
    int y_hat = predict_from_score(s, learner_.thresholds());
    learner_.step(x, fb.reveal());
    return {s, y_hat, y_hat, fb.below(y_hat)};
  }
  const Thresholds& thresholds() const override { return learner_.thresholds(); }
  double scorer_sqnorm() const override { return learner_.weight_sqnorm(); }

 private:
  PrankLearner learner_;
};

class PrilAlgo final : public OnlineAlgo {
 public:
  PrilAlgo(const AlgoSpec& spec, int k, int dim) : learner_(k, dim, spec.lambda) {}
  std::string name() const override { return "pril"; }
  double lambda() const override { return learner_.lambda(); }
  StepOutcome process(const Vec& x, const FeedbackSource& fb) override {
    return learner_.step(x, fb);
  }
  const Thresholds& thresholds() const override { return learner_.thresholds(); }
  double scorer_sqnorm() const override { return learner_.weight_sqnorm(); }

 private:
  PrilLearner learner_;
};

}  // namespace

std::unique_ptr<OnlineAlgo> make_algo(const AlgoSpec& spec, int k, int dim,
                                      std::uint64_t policy_seed) {
  if (spec.name == "dford-linear")
    return std::make_unique<DfordLinearAlgo>(spec, k, dim, policy_seed);
  if (spec.name == "dford-kernel") return std::make_unique<DfordKernelAlgo>(spec, k, policy_seed);
  if (spec.name == "prank") return std::make_unique<PrankAlgo>(spec, k, dim);
  if (spec.name == "pril") return std::make_unique<PrilAlgo>(spec, k, dim);
  throw InputError("unknown algorithm '" + spec.name + "'");
}

RunRecord run_online(OnlineAlgo& algo, const Dataset& data, std::uint64_t seed,
                     const RunOptions& opt) {
  if (opt.iters < 1) throw InputError("run_online: iters must be >= 1");
  if (opt.cadence < 1) throw InputError("run_online: cadence must be >= 1");
  auto t0 = std::chrono::steady_clock::now();

  ExampleStream stream(data, derive_seed(seed, "stream"));
  RunRecord rec;
  rec.algo = algo.name();
  rec.seed = seed;

  double cum_mae = 0.0;
  double cum_loss = 0.0;
  long cum_viol = 0;

  for (long n = 1; n <= opt.iters; ++n) {
    auto item = stream.next();
    Thresholds th_pre = algo.thresholds();
    double w2_pre = algo.scorer_sqnorm();

    StepOutcome out = algo.process(item.x, FeedbackSource(item.y));

    int inst = opt.mae_on_sampled ? std::abs(out.sampled - item.y)
                                  : mae_loss(out.score, th_pre, item.y);
    cum_mae += inst;
    cum_loss += regularized_loss(out.score, th_pre, item.y, algo.lambda(), w2_pre);
    cum_viol += violation_count(algo.thresholds());
    rec.peak_support = std::max(rec.peak_support, algo.support_size());

    if (n % opt.cadence == 0 || n == opt.iters) {
      MetricsSnapshot snap;
      snap.t = n;
      snap.mean_mae = cum_mae / static_cast<double>(n);
      snap.inst_mae = inst;
      snap.cum_reg_loss = cum_loss;
      snap.violations = cum_viol;
      if (opt.record_thetas) snap.thetas = algo.thresholds().values();
      if (!rec.checkpoints.empty() && rec.checkpoints.back().t == n) rec.checkpoints.pop_back();
      rec.checkpoints.push_back(std::move(snap));
    }
  }
  rec.final_mean_mae = cum_mae / static_cast<double>(opt.iters);
  rec.total_violations = cum_viol;
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

RunRecord run_algo(const AlgoSpec& spec, const Dataset& data, std::uint64_t seed,
                   const RunOptions& opt) {
  auto algo = make_algo(spec, data.k, data.dim(), derive_seed(seed, "policy"));
  return run_online(*algo, data, seed, opt);
}

}  // namespace dford

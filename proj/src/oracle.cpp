#include "dford/oracle.hpp"

#include <cmath>
#include <sstream>

#include "dford/data.hpp"
#include "dford/linear_learner.hpp"
#include "dford/rng.hpp"

namespace dford {
namespace oracle {

namespace {

// Estimator formulas, written out independently of estimation.cpp.
double z_tilde_at(int query, int i, bool below, const LabelDistribution& dist) {
  if (i != query) return 0.0;
  return (below ? 1.0 : -1.0) / dist[i];
}

double tau_tilde_at(int query, int i, bool below, const LabelDistribution& dist, double score,
                    const Thresholds& th) {
  if (i > th.k() - 1) return 0.0;  // theta_K = +inf constraint is never active
  double z = z_tilde_at(query, i, below, dist);
  if (z == 0.0) return 0.0;
  return z * (score - th[i - 1]) <= 0.0 ? z : 0.0;
}

}  // namespace

Vec exact_expectation_z(int k, int y_true, int y_hat, double gamma, double score,
                        const Thresholds& th) {
  (void)score;
  if (y_true < 1 || y_true > k) throw InputError("oracle: y_true out of range");
  if (th.k() != k) throw InputError("oracle: K mismatch");
  LabelDistribution dist = mixture(k, y_hat, gamma);
  Vec ez(static_cast<std::size_t>(k), 0.0);
  for (int query = 1; query <= k; ++query) {
    double p = dist[query];
    if (p == 0.0) continue;
    bool below = query < y_true;
    for (int i = 1; i <= k; ++i)
      ez[static_cast<std::size_t>(i - 1)] += p * z_tilde_at(query, i, below, dist);
  }
  return ez;
}

Vec exact_expectation_tau(int k, int y_true, int y_hat, double gamma, double score,
                          const Thresholds& th) {
  if (y_true < 1 || y_true > k) throw InputError("oracle: y_true out of range");
  if (th.k() != k) throw InputError("oracle: K mismatch");
  LabelDistribution dist = mixture(k, y_hat, gamma);
  Vec et(static_cast<std::size_t>(k), 0.0);
  for (int query = 1; query <= k; ++query) {
    double p = dist[query];
    if (p == 0.0) continue;
    bool below = query < y_true;
    for (int i = 1; i <= k; ++i)
      et[static_cast<std::size_t>(i - 1)] += p * tau_tilde_at(query, i, below, dist, score, th);
  }
  return et;
}

GradientPair exact_expectation_gradient(const LinearScorer& scorer, const Thresholds& th,
                                        const Vec& x, int y_true, double gamma, double lambda) {
  int k = th.k();
  double score = dot(scorer.w, x);
  int y_hat = predict_from_score(score, th);
  LabelDistribution dist = mixture(k, y_hat, gamma);

  GradientPair g;
  g.d_w.assign(x.size(), 0.0);
  g.d_theta.assign(static_cast<std::size_t>(k - 1), 0.0);
  for (int query = 1; query <= k; ++query) {
    double p = dist[query];
    if (p == 0.0) continue;
    bool below = query < y_true;
    double tau_sum = 0.0;
    for (int i = 1; i <= k; ++i) tau_sum += tau_tilde_at(query, i, below, dist, score, th);
    for (std::size_t j = 0; j < x.size(); ++j)
      g.d_w[j] += p * (lambda * scorer.w[j] - tau_sum * x[j]);
    for (int i = 1; i <= k - 1; ++i)
      g.d_theta[static_cast<std::size_t>(i - 1)] +=
          p * (lambda * th[i - 1] + tau_tilde_at(query, i, below, dist, score, th));
  }
  return g;
}

GradientPair analytic_subgradient(const LinearScorer& scorer, const Thresholds& th, const Vec& x,
                                  int y_true, double lambda) {
  int k = th.k();
  double score = dot(scorer.w, x);
  GradientPair g;
  g.d_w.assign(x.size(), 0.0);
  g.d_theta.assign(static_cast<std::size_t>(k - 1), 0.0);
  double tau_sum = 0.0;
  for (int i = 1; i <= k - 1; ++i) {
    double z = i < y_true ? 1.0 : -1.0;
    double tau = z * (score - th[i - 1]) <= 0.0 ? z : 0.0;
    tau_sum += tau;
    g.d_theta[static_cast<std::size_t>(i - 1)] = lambda * th[i - 1] + tau;
  }
  for (std::size_t j = 0; j < x.size(); ++j) g.d_w[j] = lambda * scorer.w[j] - tau_sum * x[j];
  return g;
}

namespace {
double reg_loss_at(const Vec& w, const Vec& theta, const Vec& x, int y_true, double lambda) {
  double score = dot(w, x);
  int k = static_cast<int>(theta.size()) + 1;
  double h = 0.0;
  for (int i = 1; i <= k - 1; ++i) {
    double z = i < y_true ? 1.0 : -1.0;
    double m = -z * (score - theta[static_cast<std::size_t>(i - 1)]);
    if (m > 0.0) h += m;
  }
  return 0.5 * lambda * (sqnorm(w) + sqnorm(theta)) + h;
}
}  // namespace

GradientPair finite_difference_gradient(const LinearScorer& scorer, const Thresholds& th,
                                        const Vec& x, int y_true, double lambda, double h) {
  GradientPair g;
  Vec w = scorer.w;
  Vec theta = th.values();
  g.d_w.resize(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    double keep = w[j];
    w[j] = keep + h;
    double up = reg_loss_at(w, theta, x, y_true, lambda);
    w[j] = keep - h;
    double dn = reg_loss_at(w, theta, x, y_true, lambda);
    w[j] = keep;
    g.d_w[j] = (up - dn) / (2 * h);
  }
  g.d_theta.resize(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    double keep = theta[i];
    theta[i] = keep + h;
    double up = reg_loss_at(w, theta, x, y_true, lambda);
    theta[i] = keep - h;
    double dn = reg_loss_at(w, theta, x, y_true, lambda);
    theta[i] = keep;
    g.d_theta[i] = (up - dn) / (2 * h);
  }
  return g;
}

bool kink_free(const LinearScorer& scorer, const Thresholds& th, const Vec& x, double margin) {
  double score = dot(scorer.w, x);
  for (int i = 0; i < th.k() - 1; ++i)
    if (std::abs(score - th[i]) <= margin) return false;
  return true;
}

bool BoundReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string BoundReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", c.worst_ratio);
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": worst observed/bound = " << buf
       << ", violations " << c.violations << "/" << c.cases << "\n";
  }
  return os.str();
}

BoundReport bound_checks(const BoundCheckConfig& cfg) {
  BoundReport report;
  BoundCheck tau_abs{"E[|tau|] <= K"};
  BoundCheck tau_sq{"E[tau^2] <= (2K^2/g)(1+lnK)"};
  BoundCheck inv_p{"sum 1/P <= (2K^2/g)(1+lnK)"};

  Rng rng(cfg.seed);
  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    for (double gamma : cfg.gammas) {
      double bound_sq = (2.0 * k * k / gamma) * (1.0 + std::log(static_cast<double>(k)));
      for (int y_hat = 1; y_hat <= k; ++y_hat) {
        LabelDistribution dist = mixture(k, y_hat, gamma);
        double s_inv = 0.0;
        for (int i = 1; i <= k; ++i) s_inv += 1.0 / dist[i];
        ++inv_p.cases;
        inv_p.worst_ratio = std::max(inv_p.worst_ratio, s_inv / bound_sq);
        if (s_inv > bound_sq) ++inv_p.violations;

        for (int y_true = 1; y_true <= k; ++y_true) {
          for (int draw = 0; draw < cfg.random_draws; ++draw) {
            double score = 4.0 * rng.uniform() - 2.0;
            Vec tv(static_cast<std::size_t>(k - 1));
            for (double& v : tv) v = 4.0 * rng.uniform() - 2.0;
            Thresholds th(tv);

            double e_abs = 0.0, e_sq = 0.0;
            for (int query = 1; query <= k; ++query) {
              double p = dist[query];
              bool below = query < y_true;
              double tau = tau_tilde_at(query, query, below, dist, score, th);
              e_abs += p * std::abs(tau);
              e_sq += p * tau * tau;
            }
            ++tau_abs.cases;
            tau_abs.worst_ratio = std::max(tau_abs.worst_ratio, e_abs / k);
            if (e_abs > static_cast<double>(k) * (1 + 1e-12)) ++tau_abs.violations;
            ++tau_sq.cases;
            tau_sq.worst_ratio = std::max(tau_sq.worst_ratio, e_sq / bound_sq);
            if (e_sq > bound_sq * (1 + 1e-12)) ++tau_sq.violations;
          }
        }
      }
    }
  }
  tau_abs.pass = tau_abs.violations == 0;
  tau_sq.pass = tau_sq.violations == 0;
  inv_p.pass = inv_p.violations == 0;
  report.checks.push_back(tau_abs);
  report.checks.push_back(tau_sq);
  report.checks.push_back(inv_p);

  if (cfg.trajectories) {
    // Sample-mean norms along DFORD-Linear runs on bounded data versus
    // the stated trajectory bounds (the looser published constants).
    SyntheticSpec spec;
    spec.n = 2000;
    spec.dim = 5;
    spec.k = 5;
    spec.noise_sd = 0.1;
    spec.seed = cfg.seed;
    Dataset ds = generate_synthetic(spec);
    double r2 = 0.0;
    for (const auto& row : ds.x) r2 = std::max(r2, sqnorm(row));

    double lambda = 1.0, gamma = 0.4;
    int kk = ds.k;
    double lnk = std::log(static_cast<double>(kk));
    long t_obs = cfg.trajectory_iters;

    Vec u_norm(static_cast<std::size_t>(cfg.trajectory_seeds));
    Vec u_sq(static_cast<std::size_t>(cfg.trajectory_seeds));
    Vec g_sq(static_cast<std::size_t>(cfg.trajectory_seeds));
    for (int s = 0; s < cfg.trajectory_seeds; ++s) {
      LinearLearner learner({kk, ds.dim(), lambda, gamma, 0.0, false,
                             derive_seed(cfg.seed, "traj-policy") + static_cast<std::uint64_t>(s)});
      ExampleStream stream(ds, derive_seed(cfg.seed, "traj-stream") + static_cast<std::uint64_t>(s));
      double gsq_sum = 0.0;
      for (long n = 1; n <= t_obs; ++n) {
        auto item = stream.next();
        // E[|g|^2] proxy: realized gradient of the step about to be taken.
        Vec theta = learner.thresholds().values();
        double score = dot(learner.scorer().w, item.x);
        FeedbackSource fb(item.y);
        StepOutcome out = learner.step(item.x, fb);
        double tau = 0.0;
        {
          LabelDistribution dist = mixture(kk, out.predicted, gamma);
          double z = (out.below ? 1.0 : -1.0) / dist[out.sampled];
          if (out.sampled <= kk - 1 &&
              z * (score - theta[static_cast<std::size_t>(out.sampled - 1)]) <= 0.0)
            tau = z;
        }
        double gw = 0.0;
        for (std::size_t j = 0; j < item.x.size(); ++j) {
          double gj = lambda * learner.scorer().w[j] - tau * item.x[j];
          gw += gj * gj;
        }
        for (int i = 1; i <= kk - 1; ++i) {
          double gi = lambda * theta[static_cast<std::size_t>(i - 1)] +
                      (i == out.sampled ? tau : 0.0);
          gw += gi * gi;
        }
        gsq_sum += gw;
      }
      double u2 = learner.weight_sqnorm() + sqnorm(learner.thresholds().values());
      u_norm[static_cast<std::size_t>(s)] = std::sqrt(u2);
      u_sq[static_cast<std::size_t>(s)] = u2;
      g_sq[static_cast<std::size_t>(s)] = gsq_sum / static_cast<double>(t_obs);
    }

    auto mean_se = [](const Vec& v) {
      double m = 0.0;
      for (double a : v) m += a;
      m /= static_cast<double>(v.size());
      double var = 0.0;
      for (double a : v) var += (a - m) * (a - m);
      var /= static_cast<double>(v.size() - 1);
      return std::pair<double, double>(m, std::sqrt(var / static_cast<double>(v.size())));
    };

    auto add_traj = [&](const std::string& name, const Vec& v, double bound) {
      auto [m, se] = mean_se(v);
      BoundCheck c{name};
      c.cases = static_cast<long>(v.size());
      c.worst_ratio = m / bound;
      c.violations = (m > bound + 3 * se) ? 1 : 0;
      c.pass = c.violations == 0;
      report.checks.push_back(c);
    };

    add_traj("traj E[|u|] <= K sqrt(R^2+1)/lambda", u_norm,
             kk * std::sqrt(r2 + 1.0) / lambda);
    add_traj("traj E[|u|^2] <= (R^2+1)K^2/l^2 (6(1+lnK)/(tg)+2)", u_sq,
             (r2 + 1.0) * kk * kk / (lambda * lambda) *
                 (6.0 * (1.0 + lnk) / (static_cast<double>(t_obs) * gamma) + 2.0));
    add_traj("traj E[|g|^2] <= 8(R^2+1)K^2(1+lnK)/g", g_sq,
             8.0 * (r2 + 1.0) * kk * kk * (1.0 + lnk) / gamma);
  }
  return report;
}

}  // namespace oracle
}  // namespace dford

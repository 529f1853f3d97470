#include <doctest.h>

#include <cmath>

#include "dford/estimation.hpp"
#include "dford/oracle.hpp"
#include "dford/rng.hpp"

using namespace dford;

TEST_CASE("exact expectation of z reproduces the full-information labels") {
  Thresholds th(Vec{0.0, 1.0});
  Vec ez = oracle::exact_expectation_z(3, 2, 1, 0.6, 0.2, th);
  CHECK(ez[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ez[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ez[2] == doctest::Approx(-1.0).epsilon(1e-12));

  Thresholds th2(Vec{0.5});
  Vec ez2 = oracle::exact_expectation_z(2, 1, 2, 0.4, -1.0, th2);
  CHECK(ez2[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ez2[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("exact expectation of tau matches the active-constraint labels") {
  // Constraint satisfied at i -> 0; violated below y_true -> +1.
  Thresholds th(Vec{-1.0, 2.0});
  // score = 0.5: z_1 = +1 (y=3), score - theta_1 = 1.5 > 0 -> satisfied -> 0.
  Vec et = oracle::exact_expectation_tau(3, 3, 2, 0.4, 0.5, th);
  CHECK(et[0] == doctest::Approx(0.0).epsilon(1e-12));
  // z_2 = +1, score - theta_2 = -1.5 <= 0 -> violated -> +1.
  CHECK(et[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(et[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("full sweep: oracle enumeration equals truth and the estimation module") {
  Rng rng(101);
  double worst_z = 0, worst_tau = 0, worst_impl = 0;
  for (int k = 2; k <= 6; ++k) {
    for (int y_true = 1; y_true <= k; ++y_true) {
      for (int y_hat = 1; y_hat <= k; ++y_hat) {
        for (double gamma : {0.2, 0.5, 0.8}) {
          for (int draw = 0; draw < 5; ++draw) {
            double score = 4 * rng.uniform() - 2;
            Vec tv(static_cast<std::size_t>(k - 1));
            for (double& v : tv) v = 4 * rng.uniform() - 2;
            Thresholds th(tv);

            Vec ez = oracle::exact_expectation_z(k, y_true, y_hat, gamma, score, th);
            Vec et = oracle::exact_expectation_tau(k, y_true, y_hat, gamma, score, th);
            LabelDistribution dist = mixture(k, y_hat, gamma);
            for (int i = 1; i <= k; ++i) {
              double z = full_info_label(i, y_true);
              worst_z = std::max(worst_z, std::abs(ez[static_cast<std::size_t>(i - 1)] - z));
              double tau = (i <= k - 1 && z * (score - th[i - 1]) <= 0) ? z : 0.0;
              worst_tau = std::max(worst_tau, std::abs(et[static_cast<std::size_t>(i - 1)] - tau));
            }
            // Estimation-module path must agree with the oracle's.
            Vec impl(static_cast<std::size_t>(k), 0.0);
            for (int q = 1; q <= k; ++q) {
              EstimatedLabels est = estimate_labels(dist, {q, q < y_true}, score, th);
              for (int i = 0; i < k; ++i)
                impl[static_cast<std::size_t>(i)] += dist[q] * est.tau_tilde[static_cast<std::size_t>(i)];
            }
            for (int i = 0; i < k; ++i)
              worst_impl = std::max(worst_impl, std::abs(impl[static_cast<std::size_t>(i)] -
                                                         et[static_cast<std::size_t>(i)]));
          }
        }
      }
    }
  }
  CHECK(worst_z <= 1e-10);
  CHECK(worst_tau <= 1e-10);
  CHECK(worst_impl <= 1e-12);
}

TEST_CASE("expected gradient: tau-free configs give the pure regularizer both ways") {
  // Score far below every threshold and y_true = 1: all constraints
  // z_i = -1, score - theta_i < 0 -> products > 0 -> no active terms.
  LinearScorer sc{Vec{0.1, 0.2}};
  Thresholds th(Vec{5.0, 6.0});
  Vec x{0.5, -0.5};
  double lambda = 2.0;
  auto eg = oracle::exact_expectation_gradient(sc, th, x, 1, 0.5, lambda);
  auto an = oracle::analytic_subgradient(sc, th, x, 1, lambda);
  for (std::size_t j = 0; j < x.size(); ++j) {
    CHECK(eg.d_w[j] == doctest::Approx(lambda * sc.w[j]).epsilon(1e-12));
    CHECK(an.d_w[j] == doctest::Approx(lambda * sc.w[j]).epsilon(1e-12));
  }
  for (int i = 0; i < 2; ++i) {
    CHECK(eg.d_theta[static_cast<std::size_t>(i)] == doctest::Approx(lambda * th[i]).epsilon(1e-12));
    CHECK(an.d_theta[static_cast<std::size_t>(i)] == doctest::Approx(lambda * th[i]).epsilon(1e-12));
  }
}

TEST_CASE("expected gradient equals the analytic subgradient and finite differences") {
  Rng rng(202);
  int matched = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    int k = 2 + static_cast<int>(rng.uniform_index(5));
    int dim = 2 + static_cast<int>(rng.uniform_index(3));
    LinearScorer sc{Vec(static_cast<std::size_t>(dim))};
    for (double& v : sc.w) v = 2 * rng.uniform() - 1;
    Vec tv(static_cast<std::size_t>(k - 1));
    for (double& v : tv) v = 2 * rng.uniform() - 1;
    Thresholds th(tv);
    Vec x(static_cast<std::size_t>(dim));
    for (double& v : x) v = 2 * rng.uniform() - 1;
    int y = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));
    double gamma = 0.3 + 0.5 * rng.uniform();
    double lambda = 0.5 + rng.uniform();

    auto eg = oracle::exact_expectation_gradient(sc, th, x, y, gamma, lambda);
    auto an = oracle::analytic_subgradient(sc, th, x, y, lambda);
    for (std::size_t j = 0; j < eg.d_w.size(); ++j)
      CHECK(std::abs(eg.d_w[j] - an.d_w[j]) <= 1e-9);
    for (std::size_t i = 0; i < eg.d_theta.size(); ++i)
      CHECK(std::abs(eg.d_theta[i] - an.d_theta[i]) <= 1e-9);

    // Finite differences only away from kinks.
    if (!oracle::kink_free(sc, th, x, 1e-3)) continue;
    ++matched;
    auto fd = oracle::finite_difference_gradient(sc, th, x, y, lambda);
    for (std::size_t j = 0; j < eg.d_w.size(); ++j)
      CHECK(std::abs(eg.d_w[j] - fd.d_w[j]) <= 1e-6);
    for (std::size_t i = 0; i < eg.d_theta.size(); ++i)
      CHECK(std::abs(eg.d_theta[i] - fd.d_theta[i]) <= 1e-6);
  }
  CHECK(matched > 500);
}

TEST_CASE("bound checks report passes with a fixed schema") {
  oracle::BoundCheckConfig cfg;
  cfg.k_max = 5;
  cfg.random_draws = 10;
  cfg.trajectory_seeds = 5;
  cfg.trajectory_iters = 500;
  auto report = oracle::bound_checks(cfg);
  REQUIRE(report.checks.size() == 6);
  CHECK(report.checks[0].name == "E[|tau|] <= K");
  for (const auto& c : report.checks) {
    INFO(c.name, " ratio ", c.worst_ratio);
    CHECK(c.pass);
    CHECK(c.cases > 0);
  }
  CHECK(report.all_pass());
  CHECK(report.to_string().find("[PASS]") != std::string::npos);
}

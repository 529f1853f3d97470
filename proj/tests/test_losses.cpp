#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dford/losses.hpp"
#include "dford/rng.hpp"

using namespace dford;

TEST_CASE("mae loss: hand cases") {
  Thresholds th(Vec{0.0, 1.0, 2.0});  // K=4
  CHECK(mae_loss(1.5, th, 2) == 1);

  // Zero inside the correct interval.
  CHECK(mae_loss(0.5, th, 2) == 0);
  CHECK(mae_loss(-1.0, th, 1) == 0);
  CHECK(mae_loss(5.0, th, 4) == 0);
}

TEST_CASE("mae equals |predict - y| under sorted thresholds") {
  Rng rng(5);
  for (int rep = 0; rep < 100000; ++rep) {
    int k = 2 + static_cast<int>(rng.uniform_index(5));
    Vec tv(static_cast<std::size_t>(k - 1));
    for (double& v : tv) v = 4 * rng.uniform() - 2;
    std::sort(tv.begin(), tv.end());
    Thresholds th(tv);
    double s = 6 * rng.uniform() - 3;
    int y = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));
    CHECK(mae_loss(s, th, y) == std::abs(predict_from_score(s, th) - y));
  }
}

TEST_CASE("hinge loss: hand case and zero condition") {
  Thresholds th(Vec{0.0, 1.0});  // K=3
  CHECK(hinge_loss(0.5, th, 1) == doctest::Approx(0.5));
  CHECK(hinge_loss(-2.0, th, 1) == 0.0);   // deep inside label-1 region
  CHECK(hinge_loss(0.5, th, 2) == 0.0);    // inside (theta_1, theta_2]

  // Zero iff z_i(f - theta_i) >= 0 for all i.
  Rng rng(6);
  for (int rep = 0; rep < 20000; ++rep) {
    int k = 3 + static_cast<int>(rng.uniform_index(4));
    Vec tv(static_cast<std::size_t>(k - 1));
    for (double& v : tv) v = 4 * rng.uniform() - 2;
    Thresholds t(tv);
    double s = 6 * rng.uniform() - 3;
    int y = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));
    bool all_ok = true;
    for (int i = 1; i <= k - 1; ++i)
      if (full_info_label(i, y) * (s - t[i - 1]) < 0) all_ok = false;
    CHECK((hinge_loss(s, t, y) == 0.0) == all_ok);
  }
}

// The hinge is not a pointwise upper bound of the indicator-sum loss in
// general (a violation by margin < 1 contributes less than 1 to the
// hinge). Domination does hold once every violated margin reaches 1.
TEST_CASE("hinge dominates the indicator sum when violations are deep") {
  Thresholds th(Vec{0.4});
  CHECK(hinge_loss(0.5, th, 1) == doctest::Approx(0.1));
  CHECK(mae_loss(0.5, th, 1) == 1);  // the counterexample to pointwise domination

  Rng rng(8);
  int checked = 0;
  for (int rep = 0; rep < 50000; ++rep) {
    int k = 2 + static_cast<int>(rng.uniform_index(5));
    Vec tv(static_cast<std::size_t>(k - 1));
    for (double& v : tv) v = 6 * rng.uniform() - 3;
    std::sort(tv.begin(), tv.end());
    Thresholds t(tv);
    double s = 8 * rng.uniform() - 4;
    int y = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));
    bool deep = true;
    for (int i = 1; i <= k - 1; ++i) {
      double m = -full_info_label(i, y) * (s - t[i - 1]);
      if (m > 0 && m < 1) deep = false;
    }
    if (!deep) continue;
    ++checked;
    CHECK(hinge_loss(s, t, y) >= static_cast<double>(mae_loss(s, t, y)));
  }
  CHECK(checked > 1000);
}

TEST_CASE("hinge is convex in (score, theta)") {
  Rng rng(9);
  for (int rep = 0; rep < 20000; ++rep) {
    int k = 3;
    Vec a{4 * rng.uniform() - 2, 4 * rng.uniform() - 2};
    Vec b{4 * rng.uniform() - 2, 4 * rng.uniform() - 2};
    double sa = 4 * rng.uniform() - 2, sb = 4 * rng.uniform() - 2;
    int y = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));
    Vec mid{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
    double lm = hinge_loss((sa + sb) / 2, Thresholds(mid), y);
    double lr = 0.5 * hinge_loss(sa, Thresholds(a), y) + 0.5 * hinge_loss(sb, Thresholds(b), y);
    CHECK(lm <= lr + 1e-9);
  }
}

TEST_CASE("regularized loss reduces to hinge at lambda 0 and at the origin") {
  Thresholds zero(Vec{0.0, 0.0});
  CHECK(regularized_loss(0.0, zero, 2, 1.0, 0.0) == doctest::Approx(hinge_loss(0.0, zero, 2)));
  Thresholds th(Vec{-0.5, 0.7});
  CHECK(regularized_loss(0.3, th, 2, 0.0, 5.0) == doctest::Approx(hinge_loss(0.3, th, 2)));
}

TEST_CASE("regularized loss is lambda-strongly convex") {
  // L(u) - L(u') >= <g(u'), u - u'> + (lambda/2)|u - u'|^2 with the
  // active-branch subgradient at u'.
  Rng rng(10);
  const double lambda = 1.0;
  int k = 4;
  for (int rep = 0; rep < 10000; ++rep) {
    Vec w1{4 * rng.uniform() - 2, 4 * rng.uniform() - 2};
    Vec w2{4 * rng.uniform() - 2, 4 * rng.uniform() - 2};
    Vec t1{4 * rng.uniform() - 2, 4 * rng.uniform() - 2, 4 * rng.uniform() - 2};
    Vec t2{4 * rng.uniform() - 2, 4 * rng.uniform() - 2, 4 * rng.uniform() - 2};
    Vec x{2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
    int y = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));

    double f2 = dot(w2, x);
    // subgradient at u2
    Vec gw(2), gt(3);
    double tau_sum = 0;
    for (int i = 1; i <= k - 1; ++i) {
      double z = full_info_label(i, y);
      double tau = z * (f2 - t2[static_cast<std::size_t>(i - 1)]) <= 0 ? z : 0;
      tau_sum += tau;
      gt[static_cast<std::size_t>(i - 1)] = lambda * t2[static_cast<std::size_t>(i - 1)] + tau;
    }
    for (int j = 0; j < 2; ++j) gw[static_cast<std::size_t>(j)] = lambda * w2[static_cast<std::size_t>(j)] - tau_sum * x[static_cast<std::size_t>(j)];

    double l1 = regularized_loss(dot(w1, x), Thresholds(t1), y, lambda, sqnorm(w1));
    double l2 = regularized_loss(f2, Thresholds(t2), y, lambda, sqnorm(w2));
    double inner = 0, d2 = 0;
    for (int j = 0; j < 2; ++j) {
      double diff = w1[static_cast<std::size_t>(j)] - w2[static_cast<std::size_t>(j)];
      inner += gw[static_cast<std::size_t>(j)] * diff;
      d2 += diff * diff;
    }
    for (int i = 0; i < 3; ++i) {
      double diff = t1[static_cast<std::size_t>(i)] - t2[static_cast<std::size_t>(i)];
      inner += gt[static_cast<std::size_t>(i)] * diff;
      d2 += diff * diff;
    }
    CHECK(l1 - l2 >= inner + 0.5 * lambda * d2 - 1e-9);
  }
}

TEST_CASE("interval hinge: singleton equals hinge; wide intervals vanish") {
  Rng rng(12);
  for (int rep = 0; rep < 20000; ++rep) {
    int k = 2 + static_cast<int>(rng.uniform_index(5));
    Vec tv(static_cast<std::size_t>(k - 1));
    for (double& v : tv) v = 4 * rng.uniform() - 2;
    Thresholds th(tv);
    double s = 6 * rng.uniform() - 3;
    int y = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));
    CHECK(interval_hinge_loss(s, th, IntervalLabel(y, y, k)) ==
          doctest::Approx(hinge_loss(s, th, y)));
  }

  // Full interval [1, K]: z_i = 0 for i in [1, K-1], so zero loss.
  Thresholds th(Vec{0.0, 1.0, 2.0});
  CHECK(interval_hinge_loss(123.0, th, IntervalLabel(1, 4, 4)) == 0.0);

  // Brute-force z: derive from the definition and compare.
  for (int rep = 0; rep < 20000; ++rep) {
    int k = 3 + static_cast<int>(rng.uniform_index(4));
    Vec tv(static_cast<std::size_t>(k - 1));
    for (double& v : tv) v = 4 * rng.uniform() - 2;
    Thresholds t(tv);
    double s = 6 * rng.uniform() - 3;
    int lo = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));
    int hi = lo + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k - lo + 1)));
    double brute = 0;
    for (int i = 1; i <= k - 1; ++i) {
      double z = (i < lo ? 1.0 : 0.0) - (i >= hi ? 1.0 : 0.0);
      brute += std::max(0.0, -z * (s - t[i - 1]));
    }
    CHECK(interval_hinge_loss(s, t, IntervalLabel(lo, hi, k)) == doctest::Approx(brute));
  }
}

TEST_CASE("interval hinge vanishes exactly on the feasible band") {
  Rng rng(13);
  for (int rep = 0; rep < 20000; ++rep) {
    int k = 3 + static_cast<int>(rng.uniform_index(4));
    Vec tv(static_cast<std::size_t>(k - 1));
    for (double& v : tv) v = 4 * rng.uniform() - 2;
    std::sort(tv.begin(), tv.end());
    Thresholds t(tv);
    double s = 6 * rng.uniform() - 3;
    int lo = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));
    int hi = lo + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k - lo + 1)));
    bool in_band = (lo == 1 || s >= t[lo - 2]) && (hi == k || s <= t[hi - 1]);
    CHECK((interval_hinge_loss(s, t, IntervalLabel(lo, hi, k)) == 0.0) == in_band);
  }
}

TEST_CASE("violation count") {
  CHECK(violation_count(Thresholds(Vec{0.0, 1.0, 2.0})) == 0);
  CHECK(violation_count(Thresholds(Vec{3.0, 2.0, 1.0})) == 2);  // K=4 reverse-sorted
  CHECK(violation_count(Thresholds(Vec{0.0, 2.0, 1.0})) == 1);  // single swap
  CHECK(violation_count(Thresholds(Vec{0.0})) == 0);            // K=2: no pairs
}

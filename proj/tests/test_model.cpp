#include <doctest.h>

#include <algorithm>

#include "dford/model.hpp"
#include "dford/rng.hpp"

using namespace dford;

TEST_CASE("thresholds validate shape and finiteness") {
  CHECK_THROWS_AS(Thresholds(Vec{}), InputError);
  CHECK_THROWS_AS(Thresholds::zeros(1), InputError);
  CHECK_THROWS_AS(Thresholds(Vec{0.0, std::numeric_limits<double>::infinity()}), InputError);
  Thresholds th(Vec{0.5, 1.0});
  CHECK(th.k() == 3);
  // Unsorted is a legal transient state.
  CHECK_NOTHROW(Thresholds(Vec{1.0, 0.0}));
}

TEST_CASE("predict follows the min-index rule") {
  Thresholds th(Vec{0.5, 1.0});
  CHECK(predict_from_score(0.7, th) == 2);

  Thresholds th2(Vec{0.0, 1.0});
  CHECK(predict_from_score(-5.0, th2) == 1);
  CHECK(predict_from_score(99.0, th2) == 3);  // only theta_K = inf catches it

  // Ties resolve to the lower label.
  CHECK(predict_from_score(0.0, th2) == 1);
  CHECK(predict_from_score(1.0, th2) == 2);
}

TEST_CASE("predict with an unsorted vector still uses the literal rule") {
  Thresholds th(Vec{1.0, 0.0});
  CHECK(predict_from_score(0.5, th) == 1);   // 0.5 <= 1.0 at index 1
  CHECK(predict_from_score(2.0, th) == 3);
}

TEST_CASE("linear score is the dot product") {
  OrdinalModel m(LinearScorer{Vec{1.0, 2.0}}, Thresholds(Vec{0.0}));
  CHECK(score(m, Vec{3.0, 1.0}) == doctest::Approx(5.0));
  CHECK_THROWS_AS(score(m, Vec{1.0}), InputError);
}

TEST_CASE("kernel scorer evaluates the scaled expansion") {
  KernelScorer ks;
  ks.kernel = KernelSpec::linear();
  ks.scale = 0.5;
  Vec a{2.0, 0.0};  // <a,a> = 4
  ks.support.push_back({1, 2.0, a});
  OrdinalModel m(ks, Thresholds(Vec{0.0}));
  CHECK(score(m, a) == doctest::Approx(4.0));

  KernelScorer empty;
  empty.kernel = KernelSpec::linear();
  OrdinalModel m0(empty, Thresholds(Vec{0.0}));
  CHECK(score(m0, Vec{1.0}) == 0.0);
}

TEST_CASE("kernel specs are symmetric and nonnegative on the diagonal") {
  Rng rng(11);
  std::vector<KernelSpec> specs = {KernelSpec::linear(), KernelSpec::polynomial(3, 1.0),
                                   KernelSpec::rbf(0.7)};
  for (const auto& spec : specs) {
    for (int rep = 0; rep < 100; ++rep) {
      Vec a(4), b(4);
      for (double& v : a) v = 2 * rng.uniform() - 1;
      for (double& v : b) v = 2 * rng.uniform() - 1;
      CHECK(spec.eval(a, b) == doctest::Approx(spec.eval(b, a)));
      CHECK(spec.eval(a, a) >= 0.0);
    }
  }
  CHECK(KernelSpec::polynomial(3, 1.0).eval(Vec{1.0}, Vec{1.0}) == doctest::Approx(8.0));
  CHECK_THROWS_AS(KernelSpec::polynomial(0), InputError);
  CHECK_THROWS_AS(KernelSpec::rbf(0.0), InputError);
}

TEST_CASE("predict is monotone in the score and matches the counting form") {
  Rng rng(7);
  for (int rep = 0; rep < 2000; ++rep) {
    int k = 2 + static_cast<int>(rng.uniform_index(7));
    Vec tv(static_cast<std::size_t>(k - 1));
    for (double& v : tv) v = 4 * rng.uniform() - 2;
    std::sort(tv.begin(), tv.end());
    Thresholds th(tv);

    double s1 = 6 * rng.uniform() - 3;
    double s2 = 6 * rng.uniform() - 3;
    if (s1 > s2) std::swap(s1, s2);
    CHECK(predict_from_score(s1, th) <= predict_from_score(s2, th));

    // 1 + sum_k I[score > theta_k] agrees with the min rule when sorted.
    int counting = 1;
    for (double t : tv)
      if (s1 > t) ++counting;
    CHECK(predict_from_score(s1, th) == counting);
  }
}

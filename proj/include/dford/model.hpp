#pragma once

#include <variant>

#include "dford/common.hpp"

namespace dford {

/// Ordered-category thresholds theta_1..theta_{K-1}. theta_K is +inf by
/// convention and never stored. Ordering is NOT enforced here: the
/// directional-feedback learners only guarantee it in expectation, so a
/// transiently unsorted vector is a legal state (the violation counter in
/// losses.hpp tracks it).
class Thresholds {
 public:
  explicit Thresholds(Vec values);
  static Thresholds zeros(int k);

  int k() const { return static_cast<int>(values_.size()) + 1; }
  const Vec& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

  // Mutable access for learner updates.
  Vec& mutable_values() { return values_; }

 private:
  Vec values_;
};

struct LinearScorer {
  Vec w;

  int dim() const { return static_cast<int>(w.size()); }
};

/// Kernel choice for the kernel learner. polynomial(p, c) is
/// (c + <a,b>)^p; rbf(g) is exp(-g*|a-b|^2).
struct KernelSpec {
  enum class Kind { kLinear, kPolynomial, kRbf };

  Kind kind = Kind::kLinear;
  int degree = 1;      // polynomial only
  double offset = 1.0; // polynomial only
  double gamma = 1.0;  // rbf only

  static KernelSpec linear() { return {}; }
  static KernelSpec polynomial(int degree, double offset = 1.0);
  static KernelSpec rbf(double gamma);

  double eval(const Vec& a, const Vec& b) const;
  std::string name() const;
};

/// Truncated kernel expansion: scale * sum_i coeff_i * k(anchor_i, .).
/// `trial` tags each term with the trial that produced it so the
/// truncation window is defined over trial indices, not buffer slots.
struct KernelScorer {
  struct Term {
    long trial;
    double coeff;
    Vec anchor;
  };

  std::vector<Term> support;
  double scale = 1.0;
  KernelSpec kernel;

  double evaluate(const Vec& x) const;
};

/// Score function plus thresholds; the unit every learner produces.
struct OrdinalModel {
  std::variant<LinearScorer, KernelScorer> scorer;
  Thresholds thresholds;

  OrdinalModel(LinearScorer s, Thresholds t)
      : scorer(std::move(s)), thresholds(std::move(t)) {}
  OrdinalModel(KernelScorer s, Thresholds t)
      : scorer(std::move(s)), thresholds(std::move(t)) {}
};

double score(const OrdinalModel& model, const Vec& x);

/// Label rule: min{i in [K] : score - theta_i <= 0}, with theta_K = +inf.
/// Ties score == theta_i resolve to the lower label. Used literally even
/// when thresholds are transiently unsorted.
int predict_from_score(double s, const Thresholds& th);
int predict(const OrdinalModel& model, const Vec& x);

}  // namespace dford

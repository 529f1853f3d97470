#include "dford/model.hpp"

#include <cmath>

namespace dford {

Thresholds::Thresholds(Vec values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("Thresholds: need K >= 2 (at least one threshold)");
  if (!all_finite(values_)) throw InputError("Thresholds: non-finite entry");
}

Thresholds Thresholds::zeros(int k) {
  if (k < 2) throw InputError("Thresholds: K must be >= 2");
  return Thresholds(Vec(static_cast<std::size_t>(k - 1), 0.0));
}

KernelSpec KernelSpec::polynomial(int degree, double offset) {
  if (degree < 1) throw InputError("KernelSpec: polynomial degree must be >= 1");
  if (!std::isfinite(offset)) throw InputError("KernelSpec: non-finite offset");
  KernelSpec s;
  s.kind = Kind::kPolynomial;
  s.degree = degree;
  s.offset = offset;
  return s;
}

KernelSpec KernelSpec::rbf(double gamma) {
  if (!(gamma > 0) || !std::isfinite(gamma)) throw InputError("KernelSpec: rbf gamma must be > 0");
  KernelSpec s;
  s.kind = Kind::kRbf;
  s.gamma = gamma;
  return s;
}

double KernelSpec::eval(const Vec& a, const Vec& b) const {
  switch (kind) {
    case Kind::kLinear:
      return dot(a, b);
    case Kind::kPolynomial: {
      double base = offset + dot(a, b);
      double r = 1.0;
      for (int i = 0; i < degree; ++i) r *= base;
      return r;
    }
    case Kind::kRbf: {
      if (a.size() != b.size()) throw InputError("kernel: dimension mismatch");
      double d2 = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        double diff = a[i] - b[i];
        d2 += diff * diff;
      }
      return std::exp(-gamma * d2);
    }
  }
  throw InternalError("KernelSpec: unknown kind");
}

std::string KernelSpec::name() const {
  switch (kind) {
    case Kind::kLinear:
      return "linear";
    case Kind::kPolynomial:
      return "poly:" + std::to_string(degree) + ":" + std::to_string(offset);
    case Kind::kRbf:
      return "rbf:" + std::to_string(gamma);
  }
  return "?";
}

double KernelScorer::evaluate(const Vec& x) const {
  double s = 0.0;
  for (const Term& t : support) s += t.coeff * kernel.eval(t.anchor, x);
  return scale * s;
}

double score(const OrdinalModel& model, const Vec& x) {
  double s;
  if (const auto* lin = std::get_if<LinearScorer>(&model.scorer)) {
    s = dot(lin->w, x);
  } else {
    s = std::get<KernelScorer>(model.scorer).evaluate(x);
  }
  if (!std::isfinite(s)) throw NumericError("score: non-finite value", -1);
  return s;
}

int predict_from_score(double s, const Thresholds& th) {
  const Vec& v = th.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (s - v[i] <= 0.0) return static_cast<int>(i) + 1;
  }
  return th.k();  // theta_K = +inf always satisfies the rule
}

int predict(const OrdinalModel& model, const Vec& x) {
  return predict_from_score(score(model, x), model.thresholds);
}

}  // namespace dford

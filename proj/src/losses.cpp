#include "dford/losses.hpp"

namespace dford {

IntervalLabel::IntervalLabel(int lo_, int hi_, int k) : lo(lo_), hi(hi_) {
  if (lo < 1 || hi > k || lo > hi) throw InputError("IntervalLabel: need 1 <= lo <= hi <= K");
}

int mae_loss(double score, const Thresholds& th, int y) {
  int k = th.k();
  if (y < 1 || y > k) throw InputError("mae_loss: label out of [1, K]");
  int v = 0;
  for (int i = 1; i <= y - 1; ++i)
    if (score < th[i - 1]) ++v;
  for (int i = y; i <= k - 1; ++i)  // the i = K term compares against +inf
    if (score >= th[i - 1]) ++v;
  return v;
}

double hinge_loss(double score, const Thresholds& th, int y) {
  int k = th.k();
  if (y < 1 || y > k) throw InputError("hinge_loss: label out of [1, K]");
  double s = 0.0;
  for (int i = 1; i <= k - 1; ++i) {
    double m = -full_info_label(i, y) * (score - th[i - 1]);
    if (m > 0.0) s += m;
  }
  return s;
}

double regularized_loss(double score, const Thresholds& th, int y, double lambda,
                        double param_sqnorm) {
  return 0.5 * lambda * (param_sqnorm + sqnorm(th.values())) + hinge_loss(score, th, y);
}

double regularized_loss(const OrdinalModel& model, const Vec& x, int y, double lambda) {
  double w2;
  if (const auto* lin = std::get_if<LinearScorer>(&model.scorer)) {
    w2 = sqnorm(lin->w);
  } else {
    // Dense RKHS norm of the expansion; fine at test scale.
    const auto& ks = std::get<KernelScorer>(model.scorer);
    double g = 0.0;
    for (const auto& a : ks.support)
      for (const auto& b : ks.support) g += a.coeff * b.coeff * ks.kernel.eval(a.anchor, b.anchor);
    w2 = ks.scale * ks.scale * g;
  }
  return regularized_loss(score(model, x), model.thresholds, y, lambda, w2);
}

double interval_hinge_loss(double score, const Thresholds& th, const IntervalLabel& iv) {
  int k = th.k();
  if (iv.hi > k) throw InputError("interval_hinge_loss: interval exceeds K");
  double s = 0.0;
  for (int i = 1; i <= k - 1; ++i) {
    double z = 0.0;
    if (i < iv.lo) z = 1.0;
    else if (i >= iv.hi) z = -1.0;
    if (z == 0.0) continue;
    double m = -z * (score - th[i - 1]);
    if (m > 0.0) s += m;
  }
  return s;
}

int violation_count(const Thresholds& th) {
  const Vec& v = th.values();
  int c = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i + 1] < v[i]) ++c;
  return c;
}

}  // namespace dford

#pragma once

namespace dford {

/// The only channel a directional-feedback learner gets: one bit telling
/// whether a queried label lies strictly below the true one. Learners
/// take this interface, so their code path cannot read the label itself.
class DirectionalOracle {
 public:
  virtual bool below(int label) const = 0;

 protected:
  ~DirectionalOracle() = default;
};

/// Harness-side source that holds the true label. Full-information
/// algorithms call reveal(); directional learners only ever see the
/// DirectionalOracle base.
class FeedbackSource final : public DirectionalOracle {
 public:
  explicit FeedbackSource(int y_true) : y_(y_true) {}

  bool below(int label) const override { return label < y_; }
  int reveal() const { return y_; }

 private:
  int y_;
};

}  // namespace dford

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dford {

using Vec = std::vector<double>;

// Bad caller input (dimension mismatch, out-of-range label, malformed file).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters left the finite range during a run. Carries the trial index.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, long trial)
      : std::runtime_error(what + " (trial " + std::to_string(trial) + ")"),
        trial_(trial) {}
  long trial() const { return trial_; }

 private:
  long trial_;
};

// Broken internal invariant (e.g. corrupted truncation buffer).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double sqnorm(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline bool all_finite(const Vec& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace dford

#pragma once

#include <cstdint>
#include <string>

#include "dford/common.hpp"
#include "dford/rng.hpp"

namespace dford {

struct Dataset {
  std::vector<Vec> x;
  std::vector<int> y;  // labels in [1, K]
  int k = 2;
  std::string note;

  long n() const { return static_cast<long>(y.size()); }
  int dim() const { return x.empty() ? 0 : static_cast<int>(x.front().size()); }
  void validate() const;
};

struct SyntheticSpec {
  long n = 10000;
  int dim = 10;
  int k = 5;
  double noise_sd = 0.0;
  int poly_degree = 0;  // 0: latent score w*.x; p >= 1: (1 + w*.x)^p
  std::uint64_t seed = 1;
};

/// Uniform features on [-1,1]^d, latent score through a random unit
/// direction, class thresholds at the empirical quantiles of the score
/// (equi-frequent classes), label by the threshold rule on score +
/// Gaussian noise. noise_sd = 0 with the linear latent makes the task
/// exactly realizable by a linear model.
Dataset generate_synthetic(const SyntheticSpec& spec);

/// Uniform-with-replacement resampling so runs can exceed the dataset
/// size; deterministic given the seed.
class ExampleStream {
 public:
  ExampleStream(const Dataset& ds, std::uint64_t seed);

  struct Item {
    const Vec& x;
    int y;
    std::size_t index;
  };
  Item next();

 private:
  const Dataset* ds_;
  Rng rng_;
};

struct RawTable {
  std::vector<Vec> features;        // target column removed
  Vec target;                       // raw target values
  std::vector<std::string> header;  // empty when the file has none
};

/// Numeric CSV reader. `target_column` is a 0-based index, or a column
/// name when the file has a header. Parse failures report row/column.
RawTable ingest_csv(const std::string& path, const std::string& target_column, bool header);

/// Per-feature z-score, in place. Constant columns become all zeros.
void normalize(std::vector<Vec>& features);

/// Equi-frequent binning into `bins` labels; ties at a bin boundary go
/// to the lower bin. Distinct inputs give bin counts differing by <= 1.
std::vector<int> discretize_equifrequent(const Vec& targets, int bins = 10);

/// Ring-count style bins: [..,7] -> 1, (7,9] -> 2, (9,12] -> 3, (12,..) -> 4.
int discretize_abalone(double target);

/// Width-5 bins anchored at 0: label = floor(target / 5) + 1.
int discretize_multiple5(double target);

/// Dataset file I/O: plain CSV (d feature columns then the integer
/// label) plus a JSON manifest holding n, d, K, provenance and seed.
void save_dataset(const Dataset& ds, const std::string& csv_path, const std::string& name,
                  std::uint64_t seed, const std::string& discretizer = "none");
Dataset load_dataset(const std::string& csv_path);

}  // namespace dford

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dford {

/// Seeded random source shared by all stochastic components.
///
/// All floating-point draws are built from raw 64-bit words of a
/// std::mt19937_64, so a (seed, algorithm id) pair pins the whole
/// sequence. The id is recorded in run manifests.
class Rng {
 public:
  static constexpr const char* kAlgorithmId = "mt19937_64";

  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; one spare value cached.
  double gaussian();

  /// Uniform index in [0, n).
  std::size_t uniform_index(std::size_t n);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Derives an independent child seed from (base, tag). Used to keep the
/// example stream, the label-sampling stream and data generation apart.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag);

}  // namespace dford

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dford/runner.hpp"

namespace dford {

/// Orchestration config shared by the study operations. Grids default to
/// the benchmark protocol: lambda in {1,2,4,8,16,32}, gamma in
/// {0.2,0.4,0.6,0.8}, truncation in {100,500,750,1000,2000}.
struct ExperimentConfig {
  AlgoSpec algo;
  const Dataset* data = nullptr;
  long iters = 100000;
  int runs = 5;
  std::uint64_t base_seed = 1;  // run r uses base_seed + r
  std::vector<double> lambda_grid = {1, 2, 4, 8, 16, 32};
  std::vector<double> gamma_grid = {0.2, 0.4, 0.6, 0.8};
  std::vector<long> delta_grid = {100, 500, 750, 1000, 2000};
  int cadence = 1000;
  int threads = 1;
  bool mae_on_sampled = false;

  std::vector<std::uint64_t> seeds() const;
};

/// Mean of the final 10% of checkpoints' running MAE - the stand-in for
/// "converged average MAE".
double converged_mae(const RunRecord& rec);

struct GridCell {
  double lambda = 0;
  double gamma = 0;
  double mean_mae = 0;   // averaged converged MAE over runs
  bool valid = true;     // false when a run diverged
};

struct GridResult {
  std::vector<GridCell> table;  // row-major over (lambda, gamma)
  double best_lambda = 0;
  double best_gamma = 0;
  std::string csv;  // grid-v1: lambda,gamma,mean_mae,status
};

/// Full sweep over the lambda x gamma grid; argmin of converged MAE,
/// ties to smaller lambda then smaller gamma. A diverging cell is marked
/// invalid instead of aborting the sweep.
GridResult grid_search(const ExperimentConfig& cfg);

struct TruncCurve {
  long delta = 0;  // 0 = unbounded
  std::vector<double> mean_mae;  // per checkpoint, averaged over runs
  double converged = 0;
  long peak_support = 0;
};

struct TruncResult {
  std::vector<TruncCurve> curves;
  long best_delta = 0;
  std::string csv;  // trunc-v1: delta,t,mean_mae
  std::vector<long> checkpoints;
};

/// One averaged curve per truncation value; argmin of converged MAE,
/// ties to the smaller (cheaper) delta. Bounded deltas order before
/// unbounded.
TruncResult truncation_sweep(const ExperimentConfig& cfg);

struct CompareResult {
  std::vector<RunRecord> records;  // |algos| x runs, grouped by algorithm
  std::string csv;                 // curve-v1 rows for every record
};

/// Runs each named algorithm over the identical streams (shared run
/// seeds) and bundles the paired curves.
CompareResult compare(const ExperimentConfig& cfg, const std::vector<std::string>& algos);

struct ExploreResult {
  Vec gammas;
  std::vector<long> checkpoints;
  std::vector<Vec> mean_mae;             // [gamma][checkpoint], averaged over runs
  std::vector<Vec> final_mae_per_seed;   // [gamma][run]
  std::string csv;                       // explore-v1: gamma,t,mean_mae
};

/// Running-MAE table across exploration rates (default {0, 0.4, 0.8}),
/// T = 10^4 with checkpoints every 10^3.
ExploreResult exploration_study(const ExperimentConfig& cfg, const Vec& gammas = {0.0, 0.4, 0.8});

/// curve-v1 CSV: algo,seed,t,mean_mae,inst_mae,cum_loss,violations.
std::string curves_csv(const std::vector<RunRecord>& records);

/// FNV-1a 64-bit, for output checksums in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);

/// Writes a run manifest next to an output file: config echo, seeds, RNG
/// id, checksum of the written bytes, wall time (timing excluded from
/// determinism guarantees).
void write_manifest(const std::string& out_path, const std::string& kind,
                    const ExperimentConfig& cfg, const std::string& csv_bytes,
                    double wall_ms, const std::string& extra_json = "");

}  // namespace dford

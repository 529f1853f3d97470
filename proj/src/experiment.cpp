#include "dford/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>

#include <json.hpp>

namespace dford {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Runs jobs[0..n) on up to `threads` workers. Each job writes only its
// own slot, so parallel and serial fills are byte-identical.
void run_jobs(std::vector<std::function<void()>>& jobs, int threads) {
  if (threads <= 1) {
    for (auto& j : jobs) j();
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      jobs[i]();
    }
  };
  std::vector<std::thread> pool;
  int nt = std::min<int>(threads, static_cast<int>(jobs.size()));
  pool.reserve(static_cast<std::size_t>(nt));
  for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<std::uint64_t> ExperimentConfig::seeds() const {
  std::vector<std::uint64_t> s(static_cast<std::size_t>(runs));
  for (int r = 0; r < runs; ++r) s[static_cast<std::size_t>(r)] = base_seed + static_cast<std::uint64_t>(r);
  return s;
}

double converged_mae(const RunRecord& rec) {
  const auto& cp = rec.checkpoints;
  if (cp.empty()) throw InternalError("converged_mae: no checkpoints");
  std::size_t tail = std::max<std::size_t>(1, cp.size() / 10);
  double s = 0.0;
  for (std::size_t i = cp.size() - tail; i < cp.size(); ++i) s += cp[i].mean_mae;
  return s / static_cast<double>(tail);
}

std::string curves_csv(const std::vector<RunRecord>& records) {
  std::string out = "algo,seed,t,mean_mae,inst_mae,cum_loss,violations\n";
  for (const auto& rec : records) {
    for (const auto& cp : rec.checkpoints) {
      out += rec.algo;
      out += ',';
      out += std::to_string(rec.seed);
      out += ',';
      out += std::to_string(cp.t);
      out += ',';
      out += fmt(cp.mean_mae);
      out += ',';
      out += fmt(cp.inst_mae);
      out += ',';
      out += fmt(cp.cum_reg_loss);
      out += ',';
      out += std::to_string(cp.violations);
      out += '\n';
    }
  }
  return out;
}

GridResult grid_search(const ExperimentConfig& cfg) {
  if (!cfg.data) throw InputError("grid_search: no dataset");
  if (cfg.lambda_grid.empty() || cfg.gamma_grid.empty()) throw InputError("grid_search: empty grid");
  if (cfg.runs < 1) throw InputError("grid_search: runs must be >= 1");

  auto seeds = cfg.seeds();
  std::size_t cells = cfg.lambda_grid.size() * cfg.gamma_grid.size();
  std::vector<GridCell> table(cells);
  std::vector<std::vector<double>> cell_mae(cells);
  std::vector<std::vector<bool>> cell_bad(cells);
  for (auto& v : cell_mae) v.resize(seeds.size());
  for (auto& v : cell_bad) v.assign(seeds.size(), false);

  RunOptions opt;
  opt.iters = cfg.iters;
  opt.cadence = cfg.cadence;
  opt.mae_on_sampled = cfg.mae_on_sampled;

  std::vector<std::function<void()>> jobs;
  for (std::size_t li = 0; li < cfg.lambda_grid.size(); ++li) {
    for (std::size_t gi = 0; gi < cfg.gamma_grid.size(); ++gi) {
      std::size_t cell = li * cfg.gamma_grid.size() + gi;
      table[cell].lambda = cfg.lambda_grid[li];
      table[cell].gamma = cfg.gamma_grid[gi];
      for (std::size_t r = 0; r < seeds.size(); ++r) {
        jobs.push_back([&, cell, r] {
          AlgoSpec spec = cfg.algo;
          spec.lambda = table[cell].lambda;
          spec.gamma = table[cell].gamma;
          try {
            RunRecord rec = run_algo(spec, *cfg.data, seeds[r], opt);
            cell_mae[cell][r] = converged_mae(rec);
          } catch (const NumericError&) {
            cell_bad[cell][r] = true;
          }
        });
      }
    }
  }
  run_jobs(jobs, cfg.threads);

  for (std::size_t cell = 0; cell < cells; ++cell) {
    bool bad = false;
    double s = 0.0;
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      bad = bad || cell_bad[cell][r];
      s += cell_mae[cell][r];
    }
    table[cell].valid = !bad;
    table[cell].mean_mae = bad ? 0.0 : s / static_cast<double>(seeds.size());
  }

  GridResult res;
  res.table = table;
  const GridCell* best = nullptr;
  for (const auto& c : table) {
    if (!c.valid) continue;
    if (!best || c.mean_mae < best->mean_mae ||
        (c.mean_mae == best->mean_mae &&
         (c.lambda < best->lambda || (c.lambda == best->lambda && c.gamma < best->gamma))))
      best = &c;
  }
  if (!best) throw NumericError("grid_search: every cell diverged", 0);
  res.best_lambda = best->lambda;
  res.best_gamma = best->gamma;

  res.csv = "lambda,gamma,mean_mae,status\n";
  for (const auto& c : table) {
    res.csv += fmt(c.lambda) + "," + fmt(c.gamma) + "," + (c.valid ? fmt(c.mean_mae) : "") + "," +
               (c.valid ? "ok" : "diverged") + "\n";
  }
  return res;
}

TruncResult truncation_sweep(const ExperimentConfig& cfg) {
  if (!cfg.data) throw InputError("truncation_sweep: no dataset");
  if (cfg.delta_grid.empty()) throw InputError("truncation_sweep: empty delta grid");
  auto seeds = cfg.seeds();

  RunOptions opt;
  opt.iters = cfg.iters;
  opt.cadence = cfg.cadence;
  opt.mae_on_sampled = cfg.mae_on_sampled;

  std::vector<std::vector<RunRecord>> recs(cfg.delta_grid.size());
  for (auto& v : recs) v.resize(seeds.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t di = 0; di < cfg.delta_grid.size(); ++di) {
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      jobs.push_back([&, di, r] {
        AlgoSpec spec = cfg.algo;
        spec.name = "dford-kernel";
        spec.delta = cfg.delta_grid[di];
        recs[di][r] = run_algo(spec, *cfg.data, seeds[r], opt);
      });
    }
  }
  run_jobs(jobs, cfg.threads);

  TruncResult res;
  for (const auto& cp : recs.front().front().checkpoints) res.checkpoints.push_back(cp.t);
  res.csv = "delta,t,mean_mae\n";
  for (std::size_t di = 0; di < cfg.delta_grid.size(); ++di) {
    TruncCurve curve;
    curve.delta = cfg.delta_grid[di];
    curve.mean_mae.assign(res.checkpoints.size(), 0.0);
    double conv = 0.0;
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      const auto& rec = recs[di][r];
      if (rec.checkpoints.size() != res.checkpoints.size())
        throw InternalError("truncation_sweep: checkpoint mismatch");
      for (std::size_t c = 0; c < rec.checkpoints.size(); ++c)
        curve.mean_mae[c] += rec.checkpoints[c].mean_mae;
      conv += converged_mae(rec);
      curve.peak_support = std::max(curve.peak_support, rec.peak_support);
    }
    for (double& v : curve.mean_mae) v /= static_cast<double>(seeds.size());
    curve.converged = conv / static_cast<double>(seeds.size());
    std::string dname = curve.delta == 0 ? "unbounded" : std::to_string(curve.delta);
    for (std::size_t c = 0; c < curve.mean_mae.size(); ++c)
      res.csv += dname + "," + std::to_string(res.checkpoints[c]) + "," + fmt(curve.mean_mae[c]) + "\n";
    res.curves.push_back(std::move(curve));
  }

  const TruncCurve* best = nullptr;
  auto order_key = [](long d) { return d == 0 ? std::numeric_limits<long>::max() : d; };
  for (const auto& c : res.curves) {
    if (!best || c.converged < best->converged ||
        (c.converged == best->converged && order_key(c.delta) < order_key(best->delta)))
      best = &c;
  }
  res.best_delta = best->delta;
  return res;
}

CompareResult compare(const ExperimentConfig& cfg, const std::vector<std::string>& algos) {
  if (!cfg.data) throw InputError("compare: no dataset");
  if (algos.empty()) throw InputError("compare: no algorithms");
  auto seeds = cfg.seeds();

  RunOptions opt;
  opt.iters = cfg.iters;
  opt.cadence = cfg.cadence;
  opt.mae_on_sampled = cfg.mae_on_sampled;

  CompareResult res;
  res.records.resize(algos.size() * seeds.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t a = 0; a < algos.size(); ++a) {
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      jobs.push_back([&, a, r] {
        AlgoSpec spec = cfg.algo;
        spec.name = algos[a];
        res.records[a * seeds.size() + r] = run_algo(spec, *cfg.data, seeds[r], opt);
      });
    }
  }
  run_jobs(jobs, cfg.threads);
  res.csv = curves_csv(res.records);
  return res;
}

ExploreResult exploration_study(const ExperimentConfig& cfg, const Vec& gammas) {
  if (!cfg.data) throw InputError("exploration_study: no dataset");
  if (gammas.empty()) throw InputError("exploration_study: no gammas");
  auto seeds = cfg.seeds();

  RunOptions opt;
  opt.iters = cfg.iters;
  opt.cadence = cfg.cadence;
  opt.mae_on_sampled = cfg.mae_on_sampled;

  std::vector<std::vector<RunRecord>> recs(gammas.size());
  for (auto& v : recs) v.resize(seeds.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      jobs.push_back([&, g, r] {
        AlgoSpec spec = cfg.algo;
        spec.gamma = gammas[g];
        recs[g][r] = run_algo(spec, *cfg.data, seeds[r], opt);
      });
    }
  }
  run_jobs(jobs, cfg.threads);

  ExploreResult res;
  res.gammas = gammas;
  for (const auto& cp : recs.front().front().checkpoints) res.checkpoints.push_back(cp.t);
  res.csv = "gamma,t,mean_mae\n";
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    Vec row(res.checkpoints.size(), 0.0);
    Vec finals(seeds.size());
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      const auto& rec = recs[g][r];
      for (std::size_t c = 0; c < rec.checkpoints.size(); ++c)
        row[c] += rec.checkpoints[c].mean_mae;
      finals[r] = rec.checkpoints.back().mean_mae;
    }
    for (double& v : row) v /= static_cast<double>(seeds.size());
    for (std::size_t c = 0; c < row.size(); ++c)
      res.csv += fmt(gammas[g]) + "," + std::to_string(res.checkpoints[c]) + "," + fmt(row[c]) + "\n";
    res.mean_mae.push_back(std::move(row));
    res.final_mae_per_seed.push_back(std::move(finals));
  }
  return res;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_manifest(const std::string& out_path, const std::string& kind,
                    const ExperimentConfig& cfg, const std::string& csv_bytes, double wall_ms,
                    const std::string& extra_json) {
  nlohmann::json m;
  m["schema"] = "run-manifest-v1";
  m["kind"] = kind;
  m["rng"] = Rng::kAlgorithmId;
  m["algo"] = cfg.algo.name;
  m["lambda"] = cfg.algo.lambda;
  m["gamma"] = cfg.algo.gamma;
  m["alpha"] = cfg.algo.alpha;
  m["delta"] = cfg.algo.delta;
  m["kernel"] = cfg.algo.kernel.name();
  m["iters"] = cfg.iters;
  m["runs"] = cfg.runs;
  m["base_seed"] = cfg.base_seed;
  m["cadence"] = cfg.cadence;
  m["threads"] = cfg.threads;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(csv_bytes)));
  m["output_fnv1a64"] = buf;
  m["wall_time_ms"] = wall_ms;  // timing: excluded from determinism
  if (!extra_json.empty()) m["extra"] = nlohmann::json::parse(extra_json);
  std::ofstream out(out_path + ".manifest.json");
  if (!out) throw InputError("write_manifest: cannot write " + out_path + ".manifest.json");
  out << m.dump(2) << '\n';
}

}  // namespace dford

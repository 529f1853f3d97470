#include "dford/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dford {

void Dataset::validate() const {
  if (k < 2) throw InputError("Dataset: K must be >= 2");
  if (x.size() != y.size()) throw InputError("Dataset: feature/label count mismatch");
  if (x.empty()) throw InputError("Dataset: empty");
  std::size_t d = x.front().size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != d) throw InputError("Dataset: ragged feature rows");
    if (!all_finite(x[i])) throw InputError("Dataset: non-finite feature at row " + std::to_string(i));
    if (y[i] < 1 || y[i] > k) throw InputError("Dataset: label out of [1, K] at row " + std::to_string(i));
  }
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n < 1 || spec.dim < 1 || spec.k < 2) throw InputError("generate_synthetic: bad shape");
  Rng rng(derive_seed(spec.seed, "synthetic"));

  std::vector<Vec> xs(static_cast<std::size_t>(spec.n));
  for (auto& row : xs) {
    row.resize(static_cast<std::size_t>(spec.dim));
    for (double& v : row) v = 2.0 * rng.uniform() - 1.0;
  }

  Vec w(static_cast<std::size_t>(spec.dim));
  for (double& v : w) v = rng.gaussian();
  double nrm = std::sqrt(sqnorm(w));
  if (nrm == 0.0) w[0] = nrm = 1.0;
  for (double& v : w) v /= nrm;

  Vec score(static_cast<std::size_t>(spec.n));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double s = dot(w, xs[i]);
    if (spec.poly_degree >= 1) {
      double base = 1.0 + s, r = 1.0;
      for (int p = 0; p < spec.poly_degree; ++p) r *= base;
      s = r;
    }
    score[i] = s;
  }

  Vec sorted = score;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back())
    throw InputError("generate_synthetic: degenerate (all-equal latent scores)");

  // Quantile cut points: the ceil(n*j/K)-th smallest score, j = 1..K-1.
  Vec cuts(static_cast<std::size_t>(spec.k - 1));
  for (int j = 1; j <= spec.k - 1; ++j) {
    long pos = (spec.n * j + spec.k - 1) / spec.k;  // ceil(n*j/K)
    cuts[static_cast<std::size_t>(j - 1)] = sorted[static_cast<std::size_t>(pos - 1)];
  }

  Dataset ds;
  ds.k = spec.k;
  ds.x = std::move(xs);
  ds.y.resize(static_cast<std::size_t>(spec.n));
  for (std::size_t i = 0; i < ds.y.size(); ++i) {
    double s = score[i];
    if (spec.noise_sd > 0) s += spec.noise_sd * rng.gaussian();
    int label = 1;
    for (double c : cuts)
      if (s > c) ++label;
    ds.y[i] = label;
  }
  std::ostringstream note;
  note << "synthetic(n=" << spec.n << ",d=" << spec.dim << ",K=" << spec.k
       << ",noise=" << spec.noise_sd << ",structure="
       << (spec.poly_degree >= 1 ? "poly" + std::to_string(spec.poly_degree) : std::string("linear"))
       << ",seed=" << spec.seed << ")";
  ds.note = note.str();
  ds.validate();
  return ds;
}

ExampleStream::ExampleStream(const Dataset& ds, std::uint64_t seed) : ds_(&ds), rng_(seed) {
  ds.validate();
}

ExampleStream::Item ExampleStream::next() {
  std::size_t i = rng_.uniform_index(static_cast<std::size_t>(ds_->n()));
  return {ds_->x[i], ds_->y[i], i};
}

namespace {

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  const char* b = cell.data();
  const char* e = b + cell.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (*(e - 1) == ' ' || *(e - 1) == '\t' || *(e - 1) == '\r')) --e;
  double v;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e)
    throw InputError("CSV: non-numeric cell at row " + std::to_string(row + 1) + ", column " +
                     std::to_string(col + 1) + ": '" + cell + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

RawTable ingest_csv(const std::string& path, const std::string& target_column, bool header) {
  std::ifstream in(path);
  if (!in) throw InputError("CSV: cannot open " + path);

  RawTable table;
  std::string line;
  std::size_t row = 0;
  long target_idx = -1;

  if (header) {
    if (!std::getline(in, line)) throw InputError("CSV: empty file " + path);
    for (auto& name : split_csv_line(line)) {
      while (!name.empty() && (name.back() == '\r' || name.back() == ' ')) name.pop_back();
      table.header.push_back(name);
    }
    for (std::size_t j = 0; j < table.header.size(); ++j)
      if (table.header[j] == target_column) target_idx = static_cast<long>(j);
  }
  if (target_idx < 0) {
    // Fall back to a 0-based index.
    try {
      std::size_t used = 0;
      target_idx = std::stol(target_column, &used);
      if (used != target_column.size()) target_idx = -1;
    } catch (...) {
      target_idx = -1;
    }
    if (target_idx < 0)
      throw InputError("CSV: target column '" + target_column + "' not found");
  }

  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (target_idx >= static_cast<long>(cells.size()))
      throw InputError("CSV: row " + std::to_string(row + 1) + " has no column " +
                       std::to_string(target_idx));
    Vec feats;
    feats.reserve(cells.size() - 1);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double v = parse_cell(cells[j], row, j);
      if (static_cast<long>(j) == target_idx)
        table.target.push_back(v);
      else
        feats.push_back(v);
    }
    if (!table.features.empty() && feats.size() != table.features.front().size())
      throw InputError("CSV: ragged row " + std::to_string(row + 1));
    table.features.push_back(std::move(feats));
    ++row;
  }
  if (table.features.empty()) throw InputError("CSV: no data rows in " + path);
  return table;
}

void normalize(std::vector<Vec>& features) {
  if (features.empty()) return;
  std::size_t d = features.front().size();
  std::size_t n = features.size();
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (const auto& row : features) mean += row[j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& row : features) {
      double c = row[j] - mean;
      var += c * c;
    }
    var /= static_cast<double>(n);
    double sd = std::sqrt(var);
    if (sd == 0.0) {
      for (auto& row : features) row[j] = 0.0;
    } else {
      for (auto& row : features) row[j] = (row[j] - mean) / sd;
    }
  }
}

std::vector<int> discretize_equifrequent(const Vec& targets, int bins) {
  if (bins < 1) throw InputError("discretize_equifrequent: bins must be >= 1");
  if (targets.empty()) throw InputError("discretize_equifrequent: empty targets");
  for (double t : targets)
    if (!std::isfinite(t)) throw InputError("discretize_equifrequent: non-finite target");

  Vec sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  long n = static_cast<long>(sorted.size());
  Vec cuts;
  cuts.reserve(static_cast<std::size_t>(bins - 1));
  for (int j = 1; j <= bins - 1; ++j) {
    long pos = (n * j + bins - 1) / bins;  // ceil(n*j/bins)
    cuts.push_back(sorted[static_cast<std::size_t>(pos - 1)]);
  }
  std::vector<int> labels(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    int label = 1;
    for (double c : cuts)
      if (targets[i] > c) ++label;  // ties stay in the lower bin
    labels[i] = label;
  }
  return labels;
}

int discretize_abalone(double target) {
  if (!std::isfinite(target)) throw InputError("discretize_abalone: non-finite target");
  if (target <= 7.0) return 1;
  if (target <= 9.0) return 2;
  if (target <= 12.0) return 3;
  return 4;
}

int discretize_multiple5(double target) {
  if (!std::isfinite(target)) throw InputError("discretize_multiple5: non-finite target");
  if (target < 0) throw InputError("discretize_multiple5: negative target");
  return static_cast<int>(std::floor(target / 5.0)) + 1;
}

void save_dataset(const Dataset& ds, const std::string& csv_path, const std::string& name,
                  std::uint64_t seed, const std::string& discretizer) {
  ds.validate();
  std::ofstream out(csv_path);
  if (!out) throw InputError("save_dataset: cannot write " + csv_path);
  char buf[64];
  for (std::size_t i = 0; i < ds.x.size(); ++i) {
    for (double v : ds.x[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << ',';
    }
    out << ds.y[i] << '\n';
  }
  out.close();

  nlohmann::json m;
  m["schema"] = "dataset-manifest-v1";
  m["name"] = name;
  m["n"] = ds.n();
  m["d"] = ds.dim();
  m["K"] = ds.k;
  m["discretizer"] = discretizer;
  m["seed"] = seed;
  m["note"] = ds.note;
  std::ofstream mf(csv_path + ".manifest.json");
  mf << m.dump(2) << '\n';
}

Dataset load_dataset(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw InputError("load_dataset: cannot open " + csv_path);
  Dataset ds;
  std::string line;
  std::size_t row = 0;
  int max_label = 2;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() < 2) throw InputError("load_dataset: row " + std::to_string(row + 1) + " too short");
    Vec feats;
    feats.reserve(cells.size() - 1);
    for (std::size_t j = 0; j + 1 < cells.size(); ++j) feats.push_back(parse_cell(cells[j], row, j));
    double raw = parse_cell(cells.back(), row, cells.size() - 1);
    int label = static_cast<int>(raw);
    if (raw != label) throw InputError("load_dataset: non-integer label at row " + std::to_string(row + 1));
    max_label = std::max(max_label, label);
    ds.x.push_back(std::move(feats));
    ds.y.push_back(label);
    ++row;
  }
  ds.k = max_label;

  std::ifstream mf(csv_path + ".manifest.json");
  if (mf) {
    nlohmann::json m = nlohmann::json::parse(mf, nullptr, true, true);
    if (m.contains("K")) ds.k = m["K"].get<int>();
    if (m.contains("note")) ds.note = m["note"].get<std::string>();
  }
  ds.validate();
  return ds;
}

}  // namespace dford

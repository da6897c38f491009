#include "cli/aggregate.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cli/config.hpp"

namespace fs = std::filesystem;

namespace lenia::cli {

namespace {

struct FitnessRow {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
};

std::vector<FitnessRow> read_fitness_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("generation,", 0) != 0) {
    throw std::runtime_error(path + ": missing fitness CSV header");
  }
  std::vector<FitnessRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string gen_s, best_s, mean_s;
    if (!std::getline(ls, gen_s, ',') || !std::getline(ls, best_s, ',') ||
        !std::getline(ls, mean_s, ',')) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed row");
    }
    FitnessRow row;
    try {
      row.generation = std::stoi(gen_s);
      row.best = std::stod(best_s);
      row.mean = std::stod(mean_s);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed number");
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");
  return rows;
}

// Divisor-N stddev over a small cross-run sample.
std::pair<double, double> mean_std(const std::vector<double>& values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) {
    const double d = v - mean;
    acc += d * d;
  }
  return {mean, std::sqrt(acc / static_cast<double>(values.size()))};
}

}  // namespace

std::vector<AggregateRow> aggregate_runs(const std::vector<std::string>& run_dirs) {
  if (run_dirs.size() < 2) {
    throw std::runtime_error("aggregate: need at least 2 run directories");
  }

  std::string reference_config;
  std::vector<std::vector<FitnessRow>> runs;
  for (const std::string& dir : run_dirs) {
    const std::string manifest = (fs::path(dir) / "manifest.txt").string();
    const ExperimentConfig cfg = parse_config(manifest);
    const std::string canon = serialize_config_without_seed(cfg);
    if (reference_config.empty()) {
      reference_config = canon;
    } else if (canon != reference_config) {
      throw std::runtime_error("aggregate: run " + dir +
                               " has a different configuration (only master_seed may vary)");
    }
    runs.push_back(read_fitness_csv((fs::path(dir) / "fitness.csv").string()));
    if (runs.back().size() != runs.front().size()) {
      throw std::runtime_error("aggregate: run " + dir + " has " +
                               std::to_string(runs.back().size()) + " rows, expected " +
                               std::to_string(runs.front().size()));
    }
  }

  std::vector<AggregateRow> out;
  out.reserve(runs.front().size());
  for (std::size_t g = 0; g < runs.front().size(); ++g) {
    std::vector<double> bests, means;
    bests.reserve(runs.size());
    means.reserve(runs.size());
    for (const auto& run : runs) {
      bests.push_back(run[g].best);
      means.push_back(run[g].mean);
    }
    AggregateRow row;
    row.generation = runs.front()[g].generation;
    std::tie(row.best_mean, row.best_std) = mean_std(bests);
    std::tie(row.mean_mean, row.mean_std) = mean_std(means);
    out.push_back(row);
  }
  return out;
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "generation,best_mean,best_std,mean_mean,mean_std\n";
  char buf[160];
  for (const AggregateRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%.6f\n", row.generation, row.best_mean,
                  row.best_std, row.mean_mean, row.mean_std);
    out << buf;
  }
}

}  // namespace lenia::cli

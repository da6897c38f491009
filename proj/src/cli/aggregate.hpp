#pragma once

#include <string>
#include <vector>

namespace lenia::cli {

struct AggregateRow {
  int generation = 0;
  double best_mean = 0.0;
  double best_std = 0.0;
  double mean_mean = 0.0;
  double mean_std = 0.0;
};

// Cross-run per-generation means and population stddevs of the best and
// mean fitness columns. All runs must share a config (master_seed
// excepted) and a row count; violations name the offending run.
std::vector<AggregateRow> aggregate_runs(const std::vector<std::string>& run_dirs);

void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::string& path);

}  // namespace lenia::cli

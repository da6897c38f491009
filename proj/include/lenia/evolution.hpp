#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lenia/complexity.hpp"
#include "lenia/genome.hpp"
#include "lenia/growth.hpp"
#include "lenia/rng.hpp"

namespace lenia {

enum class BoardSeedPolicy {
  kFixedPerRun,    // one board drawn per run, reused for every evaluation
  kPerGeneration,  // fresh board each generation (non-default)
};

// Substreams of the master seed (see derive_seed in rng.hpp):
//   kStreamRunBoard                 the run's shared initial board
//   kStreamInitPopulation + i       initial genome of individual i
//   kStreamGeneration + g           selection + mutation draws of generation g
//   kStreamPerGenBoard + g          per-generation board (kPerGeneration only)
inline constexpr std::uint64_t kStreamRunBoard = 0;
inline constexpr std::uint64_t kStreamInitPopulation = 1;
inline constexpr std::uint64_t kStreamGeneration = 1ull << 32;
inline constexpr std::uint64_t kStreamPerGenBoard = 1ull << 33;

struct GaConfig {
  int population_size = 10;
  int generations = 500;
  double mutation_rate = 0.02;
  int elites = 1;
  BoardSeedPolicy board_seed_policy = BoardSeedPolicy::kFixedPerRun;
  std::uint64_t master_seed = 1;
  int board_size = 64;
  int steps = 100;

  void validate() const;
  bool operator==(const GaConfig&) const = default;
};

struct GenerationRow {
  int generation = 0;  // 1-based
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  KernelGenome best_genome;

  bool operator==(const GenerationRow&) const = default;
};

struct RunRecord {
  std::vector<GenerationRow> rows;
  KernelGenome best_genome;  // terminal best

  bool operator==(const RunRecord&) const = default;
};

// Fitness-proportionate draw. All fitnesses must be >= 0; a zero total
// falls back to a uniform draw.
std::size_t roulette_select(const std::vector<double>& fitnesses, Rng& rng);

// simulate(random_board(board_seed), to_conv_kernel(genome), ...) piped
// into the configured fitness function. Pure and deterministic.
double evaluate_individual(const KernelGenome& genome, const FitnessSpec& fitness_spec,
                           const GrowthParams& growth, std::uint64_t board_seed, int steps,
                           int board_size = 64);

// Called once per generation with the recorded row and the population
// that produced it (in evaluation order).
using GenerationCallback =
    std::function<void(const GenerationRow&, const std::vector<KernelGenome>&)>;

// Mutation-only GA: evaluate everyone, carry the top `elites` unchanged
// (ties break to the lower index), fill the rest with mutated
// roulette-selected parents. With the fixed board policy the best fitness
// is exactly non-decreasing. Evaluations may run on `threads` workers;
// results are gathered in population order so thread count never changes
// the outcome.
RunRecord evolve(const GaConfig& config, const FitnessSpec& fitness_spec,
                 const GrowthParams& growth,
                 const std::optional<std::vector<KernelGenome>>& initial_population = std::nullopt,
                 int threads = 1, const GenerationCallback& on_generation = {});

}  // namespace lenia

#include "lenia/evolution.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lenia/simulate.hpp"

namespace lenia {

void GaConfig::validate() const {
  if (population_size < 2) {
    throw std::invalid_argument("GaConfig: population_size must be >= 2");
  }
  if (generations < 1) {
    throw std::invalid_argument("GaConfig: generations must be >= 1");
  }
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw std::invalid_argument("GaConfig: mutation_rate must be in [0, 1]");
  }
  if (elites < 1 || elites >= population_size) {
    throw std::invalid_argument("GaConfig: elites must satisfy 1 <= elites < population_size");
  }
  if (board_size < kGenomeSize) {
    throw std::invalid_argument("GaConfig: board_size must be >= kernel size");
  }
  if (steps < 0) {
    throw std::invalid_argument("GaConfig: steps must be >= 0");
  }
}

std::size_t roulette_select(const std::vector<double>& fitnesses, Rng& rng) {
  if (fitnesses.empty()) {
    throw std::invalid_argument("roulette_select: empty fitness list");
  }
  double total = 0.0;
  for (double f : fitnesses) {
    if (!(f >= 0.0)) {
      throw std::invalid_argument("roulette_select: negative fitness");
    }
    total += f;
  }
  const double u = rng.uniform();
  if (total == 0.0) {
    // Degenerate wheel: uniform draw.
    return std::min(static_cast<std::size_t>(u * fitnesses.size()), fitnesses.size() - 1);
  }
  const double target = u * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    acc += fitnesses[i];
    if (target < acc) {
      return i;
    }
  }
  return fitnesses.size() - 1;  // floating-point slack on the last slice
}

namespace {

double eval_on_board(const Board& board, const KernelGenome& genome,
                     const FitnessSpec& fitness_spec, const GrowthParams& growth, int steps) {
  const FrameSequence seq = simulate(board, to_conv_kernel(genome), growth, steps);
  return fitness(seq, fitness_spec);
}

// Evaluates the population on `threads` workers; results land in
// population order so the thread count cannot change the outcome.
std::vector<double> evaluate_population(const std::vector<KernelGenome>& population,
                                        const Board& board, const FitnessSpec& fitness_spec,
                                        const GrowthParams& growth, int steps, int threads) {
  std::vector<double> fitnesses(population.size(), 0.0);
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(population.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < population.size(); ++i) {
      fitnesses[i] = eval_on_board(board, population[i], fitness_spec, growth, steps);
    }
    return fitnesses;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < population.size(); i += workers) {
          fitnesses[i] = eval_on_board(board, population[i], fitness_spec, growth, steps);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return fitnesses;
}

// Indices sorted by fitness descending, ties to the lower index.
std::vector<std::size_t> rank_by_fitness(const std::vector<double>& fitnesses) {
  std::vector<std::size_t> idx(fitnesses.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return fitnesses[a] > fitnesses[b]; });
  return idx;
}

}  // namespace

double evaluate_individual(const KernelGenome& genome, const FitnessSpec& fitness_spec,
                           const GrowthParams& growth, std::uint64_t board_seed, int steps,
                           int board_size) {
  const Board board = random_board(board_size, board_size, board_seed);
  return eval_on_board(board, genome, fitness_spec, growth, steps);
}

RunRecord evolve(const GaConfig& config, const FitnessSpec& fitness_spec,
                 const GrowthParams& growth,
                 const std::optional<std::vector<KernelGenome>>& initial_population,
                 int threads, const GenerationCallback& on_generation) {
  config.validate();
  fitness_spec.validate();
  growth.validate();

  std::vector<KernelGenome> population;
  if (initial_population) {
    if (static_cast<int>(initial_population->size()) != config.population_size) {
      throw std::invalid_argument("evolve: initial population size " +
                                  std::to_string(initial_population->size()) +
                                  " does not match population_size " +
                                  std::to_string(config.population_size));
    }
    population = *initial_population;
  } else {
    population.reserve(config.population_size);
    for (int i = 0; i < config.population_size; ++i) {
      population.push_back(
          random_genome(derive_seed(config.master_seed, kStreamInitPopulation + i)));
    }
  }

  const Board run_board = random_board(config.board_size, config.board_size,
                                       derive_seed(config.master_seed, kStreamRunBoard));

  RunRecord record;
  record.rows.reserve(config.generations);
  for (int gen = 1; gen <= config.generations; ++gen) {
    const Board& board =
        (config.board_seed_policy == BoardSeedPolicy::kFixedPerRun)
            ? run_board
            : random_board(config.board_size, config.board_size,
                           derive_seed(config.master_seed, kStreamPerGenBoard + gen));
    std::vector<double> fitnesses;
    try {
      fitnesses = evaluate_population(population, board, fitness_spec, growth,
                                      config.steps, threads);
    } catch (const std::exception& e) {
      throw std::runtime_error("evolve: generation " + std::to_string(gen) + ": " + e.what());
    }

    const std::vector<std::size_t> ranked = rank_by_fitness(fitnesses);
    GenerationRow row;
    row.generation = gen;
    row.best_fitness = fitnesses[ranked[0]];
    row.mean_fitness =
        std::accumulate(fitnesses.begin(), fitnesses.end(), 0.0) / fitnesses.size();
    row.best_genome = population[ranked[0]];
    record.rows.push_back(row);
    if (on_generation) {
      on_generation(row, population);
    }

    if (gen == config.generations) break;

    std::vector<KernelGenome> next;
    next.reserve(config.population_size);
    for (int e = 0; e < config.elites; ++e) {
      next.push_back(population[ranked[e]]);
    }
    Rng gen_rng(derive_seed(config.master_seed, kStreamGeneration + gen));
    while (static_cast<int>(next.size()) < config.population_size) {
      const std::size_t parent = roulette_select(fitnesses, gen_rng);
      next.push_back(mutate(population[parent], config.mutation_rate, gen_rng));
    }
    population = std::move(next);
  }

  record.best_genome = record.rows.back().best_genome;
  return record;
}

}  // namespace lenia

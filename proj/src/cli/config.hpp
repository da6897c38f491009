#pragma once

#include <cstdint>
#include <string>

#include "lenia/complexity.hpp"
#include "lenia/evolution.hpp"

namespace lenia::cli {

enum class InitKind { kRandom, kRing };

// Every tunable of the pipeline with its documented default. Parsed from
// a flat key=value file; '#' starts a comment, unknown keys are rejected.
// The output directory and thread count are CLI flags, not config keys,
// so two runs differing only in seed compare equal for aggregation.
struct ExperimentConfig {
  int board_size = 64;
  int kernel_size = 16;  // genome geometry is fixed 16x16
  double growth_mu = 0.31;
  double growth_sigma = 0.057;
  double dt = 0.1;
  int steps = 100;

  int dataset_size = 3000;
  int epochs = 300;
  int batch_size = 128;
  double test_fraction = 0.30;
  double learning_rate = 0.5;

  int population_size = 10;
  int generations = 500;
  double mutation_rate = 0.02;
  int elites = 1;

  FitnessKind fitness = FitnessKind::kVot;
  SamplingStrategy::Kind sampling = SamplingStrategy::Kind::kEveryNth;
  int sampling_param = 10;
  double alive_threshold = 0.1;

  double ring_radius_center = 0.5;
  double ring_shell_width = 0.15;
  InitKind init = InitKind::kRandom;

  std::uint64_t master_seed = 1;
  BoardSeedPolicy board_seed_policy = BoardSeedPolicy::kFixedPerRun;
  int checkpoint_interval = 50;

  std::string ae_model = "ae_model.bin";
  std::string dataset_file = "dataset.bin";

  GrowthParams growth_params() const;
  GaConfig ga_config() const;
  SamplingStrategy sampling_strategy() const;
  RingSpec ring_spec() const;

  // Throws naming the offending key.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& source = "<string>");
ExperimentConfig parse_config(const std::string& path);

// Canonical serialization: fixed key order, shortest round-trip number
// formatting. parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// Canonical form with master_seed zeroed; runs that agree here are
// aggregation-compatible.
std::string serialize_config_without_seed(const ExperimentConfig& config);

}  // namespace lenia::cli

#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"
#include "lenia/evolution.hpp"

namespace lenia::cli {

// Runs the full evolution experiment into out_dir:
//   fitness.csv               generation,best_fitness,mean_fitness,best_genome_file
//   genomes/gen_NNNNNN.txt    best-genome snapshots at checkpoints and the final generation
//   frames/frame_NNN.pgm      rollout of the terminal best genome from the run board
//   manifest.txt              canonical config + seed + artifact hashes (reparseable as config)
// Pre-flight failures (missing AE model, unwritable directory) throw
// before any compute happens.
RunRecord run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                         int threads = 1);

// gen-dataset stage: simulate and cache config.dataset_size frames.
std::string run_gen_dataset(const ExperimentConfig& config, const std::string& out_dir);

// train-ae stage: fit the autoencoder on a cached dataset, write the
// model file and history CSV. Fails if the dataset file is missing.
std::string run_train_ae(const ExperimentConfig& config, const std::string& out_dir);

// The manifest body minus hash comments is a valid config file.
void write_manifest(const ExperimentConfig& config, const std::string& out_dir,
                    const std::vector<std::string>& artifact_relpaths);

}  // namespace lenia::cli

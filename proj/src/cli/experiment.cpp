#include "cli/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "cli/hash.hpp"
#include "lenia/autoencoder.hpp"
#include "lenia/board_io.hpp"
#include "lenia/simulate.hpp"

namespace fs = std::filesystem;

namespace lenia::cli {

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  }
  // Probe writability up front so long runs cannot fail at the end.
  const fs::path probe = fs::path(dir) / ".write_probe";
  std::ofstream out(probe, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("output directory " + dir + " is not writable");
  }
  out.close();
  fs::remove(probe, ec);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string gen_snapshot_name(int generation) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "genomes/gen_%06d.txt", generation);
  return buf;
}

}  // namespace

void write_manifest(const ExperimentConfig& config, const std::string& out_dir,
                    const std::vector<std::string>& artifact_relpaths) {
  const std::string canonical = serialize_config(config);
  std::string out;
  out += "# lenia-evolab run manifest\n";
  out += "# reproduce with: lenia-evolab evolve --config manifest.txt --out <fresh-dir>\n";
  out += canonical;
  out += "# config_hash " + hex64(fnv1a64(canonical)) + "\n";
  std::vector<std::string> sorted = artifact_relpaths;
  std::sort(sorted.begin(), sorted.end());
  for (const std::string& rel : sorted) {
    out += "# artifact " + rel + " " + hex64(hash_file((fs::path(out_dir) / rel).string())) + "\n";
  }
  std::ofstream file(fs::path(out_dir) / "manifest.txt", std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write manifest in " + out_dir);
  file << out;
}

RunRecord run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                         int threads) {
  config.validate();
  ensure_dir(out_dir);
  ensure_dir((fs::path(out_dir) / "genomes").string());
  ensure_dir((fs::path(out_dir) / "frames").string());

  FitnessSpec spec;
  spec.kind = config.fitness;
  spec.alive_threshold = config.alive_threshold;
  spec.sampling = config.sampling_strategy();
  if (config.fitness == FitnessKind::kAe || config.fitness == FitnessKind::kAevot) {
    if (!fs::exists(config.ae_model)) {
      throw std::runtime_error("AE model file '" + config.ae_model +
                               "' not found; run `train-ae` first or point ae_model at an "
                               "existing model");
    }
    spec.model = std::make_shared<AeModel>(load_model(config.ae_model));
  }

  const GaConfig ga = config.ga_config();
  const GrowthParams growth = config.growth_params();

  std::optional<std::vector<KernelGenome>> initial;
  if (config.init == InitKind::kRing) {
    initial = std::vector<KernelGenome>(config.population_size, ring_kernel(config.ring_spec()));
  }

  std::ofstream csv(fs::path(out_dir) / "fitness.csv", std::ios::binary | std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write fitness.csv in " + out_dir);
  csv << "generation,best_fitness,mean_fitness,best_genome_file\n";

  std::vector<std::string> artifacts = {"fitness.csv"};
  const auto on_generation = [&](const GenerationRow& row, const std::vector<KernelGenome>&) {
    std::string snapshot;
    if (row.generation % config.checkpoint_interval == 0 ||
        row.generation == config.generations) {
      snapshot = gen_snapshot_name(row.generation);
      save_genome(row.best_genome, (fs::path(out_dir) / snapshot).string());
      if (std::find(artifacts.begin(), artifacts.end(), snapshot) == artifacts.end()) {
        artifacts.push_back(snapshot);
      }
    }
    csv << row.generation << ',' << fixed6(row.best_fitness) << ',' << fixed6(row.mean_fitness)
        << ',' << snapshot << '\n';
  };

  RunRecord record = evolve(ga, spec, growth, initial, threads, on_generation);
  csv.close();
  if (!csv) throw std::runtime_error("short write to fitness.csv in " + out_dir);

  // Frame dump: roll the terminal best genome from the run board.
  const Board board = random_board(config.board_size, config.board_size,
                                   derive_seed(config.master_seed, kStreamRunBoard));
  const FrameSequence seq =
      simulate(board, to_conv_kernel(record.best_genome), growth, config.steps);
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    char name[32];
    std::snprintf(name, sizeof(name), "frames/frame_%03zu.pgm", f);
    write_pgm(seq.frames[f], (fs::path(out_dir) / name).string());
    artifacts.emplace_back(name);
  }

  write_manifest(config, out_dir, artifacts);
  return record;
}

std::string run_gen_dataset(const ExperimentConfig& config, const std::string& out_dir) {
  config.validate();
  ensure_dir(out_dir);
  DatasetParams params;
  params.board_size = config.board_size;
  params.growth = config.growth_params();
  params.steps = config.steps;
  const AeDataset dataset = generate_dataset(config.dataset_size, config.master_seed, params);
  const std::string path = (fs::path(out_dir) / config.dataset_file).string();
  save_dataset(dataset, path);
  return path;
}

std::string run_train_ae(const ExperimentConfig& config, const std::string& out_dir) {
  config.validate();
  ensure_dir(out_dir);
  const std::string dataset_path = (fs::path(out_dir) / config.dataset_file).string();
  if (!fs::exists(dataset_path)) {
    throw std::runtime_error("dataset file '" + dataset_path +
                             "' not found; run `gen-dataset` first");
  }
  const AeDataset dataset = load_dataset(dataset_path);

  TrainConfig tc;
  tc.epochs = config.epochs;
  tc.batch_size = config.batch_size;
  tc.test_fraction = config.test_fraction;
  tc.learning_rate = config.learning_rate;
  tc.seed = config.master_seed;
  const TrainResult result = train(dataset, tc);

  const std::string model_path = (fs::path(out_dir) / config.ae_model).string();
  save_model(result.model, model_path);
  write_history_csv(result.history, (fs::path(out_dir) / "history.csv").string());
  return model_path;
}

}  // namespace lenia::cli

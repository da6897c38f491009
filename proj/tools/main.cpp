// lenia-evolab: experiment runner for evolving Lenia kernels under
// complexity-based fitness functions.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/aggregate.hpp"
#include "cli/config.hpp"
#include "cli/experiment.hpp"
#include "cli/render.hpp"
#include "lenia/genome.hpp"

namespace fs = std::filesystem;

namespace {

lenia::cli::ExperimentConfig load_config(const std::string& config_path,
                                         const std::optional<std::uint64_t>& seed_override) {
  lenia::cli::ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = lenia::cli::parse_config(config_path);
  }
  if (seed_override) {
    cfg.master_seed = *seed_override;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolves Lenia kernels under VoT / AE / AEVoT fitness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  int threads = 1;

  auto add_common = [&](CLI::App* cmd, bool with_threads = false) {
    cmd->add_option("--config", config_path, "key=value config file (defaults when omitted)");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "override master_seed from the config");
    if (with_threads) {
      cmd->add_option("--threads", threads, "parallel fitness evaluations per generation")
          ->check(CLI::PositiveNumber);
    }
  };

  CLI::App* gen_dataset = app.add_subcommand("gen-dataset", "simulate and cache AE training frames");
  add_common(gen_dataset);

  CLI::App* train_ae = app.add_subcommand("train-ae", "train the autoencoder on a cached dataset");
  add_common(train_ae);

  CLI::App* evolve_cmd = app.add_subcommand("evolve", "run the evolutionary experiment");
  add_common(evolve_cmd, /*with_threads=*/true);

  CLI::App* aggregate_cmd = app.add_subcommand("aggregate", "average fitness curves across runs");
  std::vector<std::string> run_dirs;
  aggregate_cmd->add_option("runs", run_dirs, "run directories (each with manifest.txt)")
      ->required()
      ->expected(-2);
  aggregate_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* render_cmd = app.add_subcommand("render", "render a genome snapshot as a PGM heatmap");
  std::string genome_path;
  int scale = 16;
  render_cmd->add_option("--genome", genome_path, "genome text file")->required();
  render_cmd->add_option("--out", out_dir, "output directory");
  render_cmd->add_option("--scale", scale, "nearest-neighbor upscale factor")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_dataset) {
      const auto cfg = load_config(config_path, seed);
      const std::string path = lenia::cli::run_gen_dataset(cfg, out_dir);
      std::printf("dataset: %s (%d frames)\n", path.c_str(), cfg.dataset_size);
    } else if (*train_ae) {
      const auto cfg = load_config(config_path, seed);
      const std::string path = lenia::cli::run_train_ae(cfg, out_dir);
      std::printf("model: %s\n", path.c_str());
    } else if (*evolve_cmd) {
      const auto cfg = load_config(config_path, seed);
      const lenia::RunRecord record = lenia::cli::run_experiment(cfg, out_dir, threads);
      std::printf("run: %s (%zu generations, final best %.6f)\n", out_dir.c_str(),
                  record.rows.size(), record.rows.back().best_fitness);
    } else if (*aggregate_cmd) {
      const auto rows = lenia::cli::aggregate_runs(run_dirs);
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      const std::string path = (fs::path(out_dir) / "aggregate.csv").string();
      lenia::cli::write_aggregate_csv(rows, path);
      std::printf("aggregate: %s (%zu rows over %zu runs)\n", path.c_str(), rows.size(),
                  run_dirs.size());
    } else if (*render_cmd) {
      const lenia::KernelGenome genome = lenia::load_genome(genome_path);
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      const std::string path = (fs::path(out_dir) / "kernel.pgm").string();
      lenia::cli::render_kernel_heatmap(genome, path, scale);
      std::printf("heatmap: %s\n", path.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

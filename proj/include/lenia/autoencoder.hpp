#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lenia/board.hpp"
#include "lenia/growth.hpp"

namespace lenia {

// Fully-connected autoencoder, one sigmoid hidden layer and a sigmoid
// output layer. Default geometry is 4096 -> 36 -> 4096 (64x64 boards);
// the matrices are row-major.
struct AeModel {
  int input_size = 0;
  int hidden_size = 0;
  std::vector<double> w_enc;  // hidden_size x input_size
  std::vector<double> b_enc;  // hidden_size
  std::vector<double> w_dec;  // input_size x hidden_size
  std::vector<double> b_dec;  // input_size

  bool operator==(const AeModel&) const = default;
};

// Weights uniform in [-r, r] with r = sqrt(6 / (fan_in + fan_out)),
// biases zero. Draw order: w_enc, w_dec.
AeModel init_model(int input_size, int hidden_size, std::uint64_t seed);

struct ForwardResult {
  std::vector<double> hidden;
  std::vector<double> output;  // values strictly in (0, 1)
};

ForwardResult forward(const AeModel& model, std::span<const double> input);

double mse(std::span<const double> a, std::span<const double> b);

// Exact analytic gradient of the batch-mean reconstruction MSE with
// respect to every parameter (targets are the inputs themselves).
struct AeGradient {
  std::vector<double> w_enc, b_enc, w_dec, b_dec;
};

AeGradient gradient(const AeModel& model, const std::vector<std::span<const double>>& batch);

struct TrainConfig {
  int epochs = 300;
  int batch_size = 128;
  double test_fraction = 0.30;
  double learning_rate = 0.5;
  std::uint64_t seed = 1;

  void validate() const;
};

struct AeDataset {
  int width = 64;
  int height = 64;
  std::vector<Board> frames;
};

struct DatasetParams {
  int board_size = 64;
  GrowthParams growth{};
  int steps = 100;
};

// Simulates rollouts from random genomes and random boards (genome seed
// stream 2r, board seed stream 2r+1 of the dataset seed) and gathers
// frames round-robin across rollouts until count frames are collected.
AeDataset generate_dataset(int count, std::uint64_t seed, const DatasetParams& params = {});

// Binary dataset cache: magic "LDS1", u32 version/count/width/height,
// little-endian f64 cells.
void save_dataset(const AeDataset& dataset, const std::string& path);
AeDataset load_dataset(const std::string& path);

struct EpochStats {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double test_loss = 0.0;  // NaN when the test split is empty
};

struct TrainResult {
  AeModel model;
  std::vector<EpochStats> history;
};

// Minibatch SGD on the reconstruction MSE. The dataset is permuted once
// by seed (stream 0) with the last test_fraction held out for monitoring;
// weights come from stream 1 and epoch shuffles from stream 2. Aborts
// with epoch/batch context if the loss goes non-finite.
TrainResult train(const AeDataset& dataset, const TrainConfig& config);

// Model file: magic "AEV1", u32 format version, u32 input/hidden/output
// sizes, then little-endian f64 arrays w_enc, b_enc, w_dec, b_dec.
void save_model(const AeModel& model, const std::string& path);
AeModel load_model(const std::string& path);

void write_history_csv(const std::vector<EpochStats>& history, const std::string& path);

}  // namespace lenia

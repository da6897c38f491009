#include "lenia/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lenia/genome.hpp"
#include "lenia/rng.hpp"
#include "lenia/simulate.hpp"

namespace lenia {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double init_range(int fan_in, int fan_out) {
  return std::sqrt(6.0 / (fan_in + fan_out));
}

void check_input_size(const AeModel& model, std::size_t n) {
  if (n != static_cast<std::size_t>(model.input_size)) {
    throw std::invalid_argument("forward: input length " + std::to_string(n) +
                                " does not match model input size " +
                                std::to_string(model.input_size));
  }
}

// ---- little-endian binary primitives -------------------------------------

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class ByteReader {
 public:
  ByteReader(const std::string& data, std::string path)
      : data_(data), path_(std::move(path)) {}

  std::uint32_t u32() {
    need(4, "header");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  double f64(const char* what) {
    need(8, what);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    double v = 0.0;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  void f64_array(std::vector<double>& out, std::size_t count, const char* what) {
    out.resize(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = f64(what);
  }

  void expect_magic(const char* magic) {
    need(4, "magic");
    if (std::memcmp(data_.data() + pos_, magic, 4) != 0) {
      throw std::runtime_error(path_ + ": bad magic, not a " + std::string(magic) + " file");
    }
    pos_ += 4;
  }

  void expect_end() {
    if (pos_ != data_.size()) {
      throw std::runtime_error(path_ + ": " + std::to_string(data_.size() - pos_) +
                               " trailing bytes after payload");
    }
  }

 private:
  void need(std::size_t n, const char* what) {
    if (data_.size() - pos_ < n) {
      throw std::runtime_error(path_ + ": truncated " + std::string(what));
    }
  }

  const std::string& data_;
  std::string path_;
  std::size_t pos_ = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

void dump(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

// Batch-mean reconstruction loss and its gradient in one pass.
double gradient_and_loss(const AeModel& m, const std::vector<std::span<const double>>& batch,
                         AeGradient& grad) {
  const int in_n = m.input_size;
  const int hid_n = m.hidden_size;
  grad.w_enc.assign(m.w_enc.size(), 0.0);
  grad.b_enc.assign(m.b_enc.size(), 0.0);
  grad.w_dec.assign(m.w_dec.size(), 0.0);
  grad.b_dec.assign(m.b_dec.size(), 0.0);

  const double batch_n = static_cast<double>(batch.size());
  double loss = 0.0;
  std::vector<double> hidden(hid_n), output(in_n), dz_out(in_n), dz_hid(hid_n);
  for (const auto& x : batch) {
    check_input_size(m, x.size());
    // forward
    for (int h = 0; h < hid_n; ++h) {
      const double* wrow = m.w_enc.data() + static_cast<std::size_t>(h) * in_n;
      double z = m.b_enc[h];
      for (int i = 0; i < in_n; ++i) z += wrow[i] * x[i];
      hidden[h] = sigmoid(z);
    }
    double sample_se = 0.0;
    for (int o = 0; o < in_n; ++o) {
      const double* wrow = m.w_dec.data() + static_cast<std::size_t>(o) * hid_n;
      double z = m.b_dec[o];
      for (int h = 0; h < hid_n; ++h) z += wrow[h] * hidden[h];
      const double y = sigmoid(z);
      output[o] = y;
      const double err = y - x[o];
      sample_se += err * err;
      // d(batch loss)/dz_out, with loss = mean over batch and elements
      dz_out[o] = 2.0 * err / (batch_n * in_n) * y * (1.0 - y);
    }
    loss += sample_se / in_n;

    // backward
    std::fill(dz_hid.begin(), dz_hid.end(), 0.0);
    for (int o = 0; o < in_n; ++o) {
      const double d = dz_out[o];
      double* gw = grad.w_dec.data() + static_cast<std::size_t>(o) * hid_n;
      const double* wrow = m.w_dec.data() + static_cast<std::size_t>(o) * hid_n;
      for (int h = 0; h < hid_n; ++h) {
        gw[h] += d * hidden[h];
        dz_hid[h] += wrow[h] * d;
      }
      grad.b_dec[o] += d;
    }
    for (int h = 0; h < hid_n; ++h) {
      const double d = dz_hid[h] * hidden[h] * (1.0 - hidden[h]);
      double* gw = grad.w_enc.data() + static_cast<std::size_t>(h) * in_n;
      for (int i = 0; i < in_n; ++i) {
        gw[i] += d * x[i];
      }
      grad.b_enc[h] += d;
    }
  }
  return loss / batch_n;
}

void apply_update(AeModel& m, const AeGradient& g, double lr) {
  for (std::size_t k = 0; k < m.w_enc.size(); ++k) m.w_enc[k] -= lr * g.w_enc[k];
  for (std::size_t k = 0; k < m.b_enc.size(); ++k) m.b_enc[k] -= lr * g.b_enc[k];
  for (std::size_t k = 0; k < m.w_dec.size(); ++k) m.w_dec[k] -= lr * g.w_dec[k];
  for (std::size_t k = 0; k < m.b_dec.size(); ++k) m.b_dec[k] -= lr * g.b_dec[k];
}

}  // namespace

AeModel init_model(int input_size, int hidden_size, std::uint64_t seed) {
  if (input_size <= 0 || hidden_size <= 0) {
    throw std::invalid_argument("init_model: sizes must be positive");
  }
  AeModel m;
  m.input_size = input_size;
  m.hidden_size = hidden_size;
  m.w_enc.resize(static_cast<std::size_t>(hidden_size) * input_size);
  m.b_enc.assign(hidden_size, 0.0);
  m.w_dec.resize(static_cast<std::size_t>(input_size) * hidden_size);
  m.b_dec.assign(input_size, 0.0);

  Rng rng(seed);
  const double r_enc = init_range(input_size, hidden_size);
  for (double& w : m.w_enc) w = (2.0 * rng.uniform() - 1.0) * r_enc;
  const double r_dec = init_range(hidden_size, input_size);
  for (double& w : m.w_dec) w = (2.0 * rng.uniform() - 1.0) * r_dec;
  return m;
}

ForwardResult forward(const AeModel& model, std::span<const double> input) {
  check_input_size(model, input.size());
  ForwardResult res;
  res.hidden.resize(model.hidden_size);
  for (int h = 0; h < model.hidden_size; ++h) {
    const double* wrow = model.w_enc.data() + static_cast<std::size_t>(h) * model.input_size;
    double z = model.b_enc[h];
    for (int i = 0; i < model.input_size; ++i) z += wrow[i] * input[i];
    res.hidden[h] = sigmoid(z);
  }
  res.output.resize(model.input_size);
  for (int o = 0; o < model.input_size; ++o) {
    const double* wrow = model.w_dec.data() + static_cast<std::size_t>(o) * model.hidden_size;
    double z = model.b_dec[o];
    for (int h = 0; h < model.hidden_size; ++h) z += wrow[h] * res.hidden[h];
    res.output[o] = sigmoid(z);
  }
  return res;
}

double mse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("mse: length mismatch " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  if (a.empty()) {
    throw std::invalid_argument("mse: empty vectors");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

AeGradient gradient(const AeModel& model, const std::vector<std::span<const double>>& batch) {
  if (batch.empty()) {
    throw std::invalid_argument("gradient: empty batch");
  }
  AeGradient grad;
  gradient_and_loss(model, batch, grad);
  return grad;
}

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("TrainConfig: test_fraction must be in (0, 1)");
  }
}

AeDataset generate_dataset(int count, std::uint64_t seed, const DatasetParams& params) {
  if (count < 1) throw std::invalid_argument("generate_dataset: count must be >= 1");
  params.growth.validate();

  const int frames_per_rollout = params.steps + 1;
  const int rollouts = (count + frames_per_rollout - 1) / frames_per_rollout;
  std::vector<FrameSequence> runs;
  runs.reserve(rollouts);
  for (int r = 0; r < rollouts; ++r) {
    const KernelGenome genome = random_genome(derive_seed(seed, 2ull * r));
    const Board board =
        random_board(params.board_size, params.board_size, derive_seed(seed, 2ull * r + 1));
    runs.push_back(simulate(board, to_conv_kernel(genome), params.growth, params.steps));
  }

  AeDataset dataset;
  dataset.width = params.board_size;
  dataset.height = params.board_size;
  dataset.frames.reserve(count);
  // Round-robin across rollouts: frame 0 of each run, then frame 1, ...
  for (int f = 0; f < frames_per_rollout && static_cast<int>(dataset.frames.size()) < count; ++f) {
    for (int r = 0; r < rollouts && static_cast<int>(dataset.frames.size()) < count; ++r) {
      dataset.frames.push_back(runs[r].frames[f]);
    }
  }
  return dataset;
}

void save_dataset(const AeDataset& dataset, const std::string& path) {
  std::string out;
  out.reserve(16 + dataset.frames.size() * dataset.width * dataset.height * 8);
  out += "LDS1";
  put_u32(out, 1);
  put_u32(out, static_cast<std::uint32_t>(dataset.frames.size()));
  put_u32(out, static_cast<std::uint32_t>(dataset.width));
  put_u32(out, static_cast<std::uint32_t>(dataset.height));
  for (const Board& frame : dataset.frames) {
    for (double v : frame.cells) put_f64(out, v);
  }
  dump(path, out);
}

AeDataset load_dataset(const std::string& path) {
  const std::string data = slurp(path);
  ByteReader in(data, path);
  in.expect_magic("LDS1");
  const std::uint32_t version = in.u32();
  if (version != 1) {
    throw std::runtime_error(path + ": unsupported dataset version " + std::to_string(version));
  }
  const std::uint32_t count = in.u32();
  const std::uint32_t width = in.u32();
  const std::uint32_t height = in.u32();
  if (count == 0 || width == 0 || height == 0) {
    throw std::runtime_error(path + ": bad dataset dimensions");
  }
  AeDataset dataset;
  dataset.width = static_cast<int>(width);
  dataset.height = static_cast<int>(height);
  dataset.frames.reserve(count);
  for (std::uint32_t f = 0; f < count; ++f) {
    Board frame(dataset.width, dataset.height);
    in.f64_array(frame.cells, frame.cell_count(), "frame payload");
    dataset.frames.push_back(std::move(frame));
  }
  in.expect_end();
  return dataset;
}

TrainResult train(const AeDataset& dataset, const TrainConfig& config) {
  config.validate();
  const int n = static_cast<int>(dataset.frames.size());
  if (n == 0) throw std::invalid_argument("train: empty dataset");
  const int input_size = dataset.width * dataset.height;
  for (const Board& frame : dataset.frames) {
    if (static_cast<int>(frame.cell_count()) != input_size) {
      throw std::invalid_argument("train: frame size does not match dataset dimensions");
    }
  }

  // Split: permute once by seed, hold out the last test_fraction.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng(derive_seed(config.seed, 0));
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(split_rng.uniform() * (i + 1));
    std::swap(order[i], order[std::min(j, i)]);
  }
  int test_count = static_cast<int>(std::lround(n * config.test_fraction));
  test_count = std::min(test_count, n - 1);  // keep at least one training sample
  const int train_count = n - test_count;
  std::vector<int> train_idx(order.begin(), order.begin() + train_count);
  std::vector<int> test_idx(order.begin() + train_count, order.end());

  constexpr int kHiddenSize = 36;
  AeModel model = init_model(input_size, std::min(kHiddenSize, input_size),
                             derive_seed(config.seed, 1));
  Rng shuffle_rng(derive_seed(config.seed, 2));

  TrainResult result;
  result.history.reserve(config.epochs);
  AeGradient grad;
  std::vector<std::span<const double>> batch;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (int i = train_count - 1; i > 0; --i) {
      const int j = static_cast<int>(shuffle_rng.uniform() * (i + 1));
      std::swap(train_idx[i], train_idx[std::min(j, i)]);
    }

    double epoch_loss = 0.0;
    int batch_no = 0;
    for (int start = 0; start < train_count; start += config.batch_size) {
      ++batch_no;
      const int end = std::min(start + config.batch_size, train_count);
      batch.clear();
      for (int k = start; k < end; ++k) {
        batch.push_back(dataset.frames[train_idx[k]].cells);
      }
      const double batch_loss = gradient_and_loss(model, batch, grad);
      if (!std::isfinite(batch_loss)) {
        throw std::runtime_error("train: non-finite loss at epoch " + std::to_string(epoch) +
                                 " batch " + std::to_string(batch_no));
      }
      epoch_loss += batch_loss * static_cast<double>(end - start);
      apply_update(model, grad, config.learning_rate);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = epoch_loss / train_count;
    if (test_idx.empty()) {
      stats.test_loss = std::numeric_limits<double>::quiet_NaN();
    } else {
      double test_loss = 0.0;
      for (int idx : test_idx) {
        const auto& x = dataset.frames[idx].cells;
        test_loss += mse(x, forward(model, x).output);
      }
      stats.test_loss = test_loss / static_cast<double>(test_idx.size());
    }
    result.history.push_back(stats);
  }
  result.model = std::move(model);
  return result;
}

void save_model(const AeModel& model, const std::string& path) {
  std::string out;
  out.reserve(20 + (model.w_enc.size() + model.b_enc.size() + model.w_dec.size() +
                    model.b_dec.size()) * 8);
  out += "AEV1";
  put_u32(out, 1);  // format version
  put_u32(out, static_cast<std::uint32_t>(model.input_size));
  put_u32(out, static_cast<std::uint32_t>(model.hidden_size));
  put_u32(out, static_cast<std::uint32_t>(model.input_size));  // output size
  for (double v : model.w_enc) put_f64(out, v);
  for (double v : model.b_enc) put_f64(out, v);
  for (double v : model.w_dec) put_f64(out, v);
  for (double v : model.b_dec) put_f64(out, v);
  dump(path, out);
}

AeModel load_model(const std::string& path) {
  const std::string data = slurp(path);
  ByteReader in(data, path);
  in.expect_magic("AEV1");
  const std::uint32_t version = in.u32();
  if (version != 1) {
    throw std::runtime_error(path + ": unsupported model format version " +
                             std::to_string(version));
  }
  const std::uint32_t input_size = in.u32();
  const std::uint32_t hidden_size = in.u32();
  const std::uint32_t output_size = in.u32();
  if (input_size == 0 || hidden_size == 0) {
    throw std::runtime_error(path + ": bad model dimensions");
  }
  if (output_size != input_size) {
    throw std::runtime_error(path + ": output size " + std::to_string(output_size) +
                             " does not match input size " + std::to_string(input_size));
  }
  AeModel model;
  model.input_size = static_cast<int>(input_size);
  model.hidden_size = static_cast<int>(hidden_size);
  const std::size_t wn = static_cast<std::size_t>(input_size) * hidden_size;
  in.f64_array(model.w_enc, wn, "w_enc payload");
  in.f64_array(model.b_enc, hidden_size, "b_enc payload");
  in.f64_array(model.w_dec, wn, "w_dec payload");
  in.f64_array(model.b_dec, input_size, "b_dec payload");
  in.expect_end();
  return model;
}

void write_history_csv(const std::vector<EpochStats>& history, const std::string& path) {
  std::string out = "epoch,train_loss,test_loss\n";
  char buf[96];
  for (const EpochStats& row : history) {
    std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g\n", row.epoch, row.train_loss, row.test_loss);
    out += buf;
  }
  dump(path, out);
}

}  // namespace lenia

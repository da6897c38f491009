#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "lenia/autoencoder.hpp"
#include "lenia/rng.hpp"

using namespace lenia;

namespace {

double sig(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Batch-mean reconstruction loss, recomputed independently for the
// finite-difference oracle.
double batch_loss(const AeModel& m, const std::vector<std::vector<double>>& batch) {
  double loss = 0.0;
  for (const auto& x : batch) {
    loss += mse(x, forward(m, x).output);
  }
  return loss / static_cast<double>(batch.size());
}

struct FdReport {
  double max_rel_err = 0.0;
};

// Central differences over every parameter of the model.
FdReport finite_difference_check(AeModel m, const std::vector<std::vector<double>>& batch,
                                 double h) {
  std::vector<std::span<const double>> views(batch.begin(), batch.end());
  const AeGradient analytic = gradient(m, views);

  FdReport report;
  auto probe = [&](std::vector<double>& params, const std::vector<double>& grad) {
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double saved = params[k];
      params[k] = saved + h;
      const double up = batch_loss(m, batch);
      params[k] = saved - h;
      const double down = batch_loss(m, batch);
      params[k] = saved;
      const double fd = (up - down) / (2.0 * h);
      const double denom = std::max({std::abs(fd), std::abs(grad[k]), 1e-6});
      report.max_rel_err = std::max(report.max_rel_err, std::abs(fd - grad[k]) / denom);
    }
  };
  probe(m.w_enc, analytic.w_enc);
  probe(m.b_enc, analytic.b_enc);
  probe(m.w_dec, analytic.w_dec);
  probe(m.b_dec, analytic.b_dec);
  return report;
}

AeDataset constant_dataset(int frames, int side, double value) {
  AeDataset ds;
  ds.width = side;
  ds.height = side;
  ds.frames.assign(frames, Board(side, side, value));
  return ds;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("forward: zero parameters map everything to 0.5") {
  AeModel m;
  m.input_size = 6;
  m.hidden_size = 2;
  m.w_enc.assign(12, 0.0);
  m.b_enc.assign(2, 0.0);
  m.w_dec.assign(12, 0.0);
  m.b_dec.assign(6, 0.0);
  const std::vector<double> x = {0.1, 0.9, 0.3, 0.7, 0.5, 0.0};
  const ForwardResult res = forward(m, x);
  for (double v : res.hidden) CHECK(v == 0.5);
  for (double v : res.output) CHECK(v == 0.5);
}

TEST_CASE("forward: outputs stay strictly inside (0, 1)") {
  const AeModel m = init_model(16, 4, 2);
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(16);
    for (double& v : x) v = rng.uniform();
    for (double v : forward(m, x).output) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  }
  std::vector<double> wrong(5, 0.1);
  CHECK_THROWS_AS(forward(m, wrong), std::invalid_argument);
}

TEST_CASE("forward: toy net matches a scalar hand computation") {
  // 2 -> 1 -> 2 with hand-set weights; every number recomputed inline.
  AeModel m;
  m.input_size = 2;
  m.hidden_size = 1;
  m.w_enc = {0.3, -0.2};
  m.b_enc = {0.1};
  m.w_dec = {0.5, -0.7};
  m.b_dec = {0.05, -0.15};
  const std::vector<double> x = {0.8, 0.4};
  const double hid = sig(0.3 * 0.8 + (-0.2) * 0.4 + 0.1);
  const double out0 = sig(0.5 * hid + 0.05);
  const double out1 = sig(-0.7 * hid - 0.15);
  const ForwardResult res = forward(m, x);
  CHECK(res.hidden[0] == doctest::Approx(hid).epsilon(1e-12));
  CHECK(res.output[0] == doctest::Approx(out0).epsilon(1e-12));
  CHECK(res.output[1] == doctest::Approx(out1).epsilon(1e-12));
}

TEST_CASE("mse: basic values") {
  const std::vector<double> a = {0.2, 0.4};
  const std::vector<double> b = {0.1, 0.8};
  CHECK(mse(a, a) == 0.0);
  CHECK(mse(std::vector<double>(4, 1.0), std::vector<double>(4, 0.0)) == 1.0);
  CHECK(mse(a, b) == doctest::Approx(0.085).epsilon(1e-12));
  CHECK_THROWS_AS(mse(a, std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST_CASE("gradient: zero-error batch gives zero gradients") {
  AeModel m;
  m.input_size = 4;
  m.hidden_size = 2;
  m.w_enc.assign(8, 0.0);
  m.b_enc.assign(2, 0.0);
  m.w_dec.assign(8, 0.0);
  m.b_dec.assign(4, 0.0);
  // output is exactly 0.5 everywhere, so a 0.5 target has zero error
  const std::vector<std::vector<double>> batch = {{0.5, 0.5, 0.5, 0.5}};
  std::vector<std::span<const double>> views(batch.begin(), batch.end());
  const AeGradient g = gradient(m, views);
  for (double v : g.w_enc) CHECK(v == 0.0);
  for (double v : g.b_enc) CHECK(v == 0.0);
  for (double v : g.w_dec) CHECK(v == 0.0);
  for (double v : g.b_dec) CHECK(v == 0.0);
}

TEST_CASE("gradient: matches central finite differences on random small nets") {
  Rng rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    const AeModel m = init_model(8, 3, rng.next_u64());
    std::vector<std::vector<double>> batch(3, std::vector<double>(8));
    for (auto& x : batch) {
      for (double& v : x) v = rng.uniform();
    }
    const FdReport report = finite_difference_check(m, batch, 1e-5);
    CHECK(report.max_rel_err < 1e-4);
  }
}

TEST_CASE("gradient: duplicated batch leaves the mean gradient unchanged") {
  const AeModel m = init_model(8, 3, 77);
  Rng rng(78);
  std::vector<std::vector<double>> batch(2, std::vector<double>(8));
  for (auto& x : batch) {
    for (double& v : x) v = rng.uniform();
  }
  std::vector<std::vector<double>> doubled = batch;
  doubled.insert(doubled.end(), batch.begin(), batch.end());

  std::vector<std::span<const double>> va(batch.begin(), batch.end());
  std::vector<std::span<const double>> vb(doubled.begin(), doubled.end());
  const AeGradient ga = gradient(m, va);
  const AeGradient gb = gradient(m, vb);
  for (std::size_t k = 0; k < ga.w_enc.size(); ++k) {
    CHECK(ga.w_enc[k] == doctest::Approx(gb.w_enc[k]).epsilon(1e-12));
  }
  for (std::size_t k = 0; k < ga.b_dec.size(); ++k) {
    CHECK(ga.b_dec[k] == doctest::Approx(gb.b_dec[k]).epsilon(1e-12));
  }
}

TEST_CASE("generate_dataset: deterministic, sized, in range") {
  DatasetParams params;
  params.board_size = 16;
  params.steps = 10;
  const AeDataset a = generate_dataset(25, 9, params);
  const AeDataset b = generate_dataset(25, 9, params);
  CHECK(a.frames.size() == 25);
  CHECK(a.frames == b.frames);
  for (const Board& frame : a.frames) {
    CHECK(frame.width == 16);
    for (double v : frame.cells) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  const AeDataset single = generate_dataset(1, 4, params);
  CHECK(single.frames.size() == 1);
  CHECK_THROWS_AS(generate_dataset(0, 1, params), std::invalid_argument);
}

TEST_CASE("dataset cache round-trips through LDS1") {
  DatasetParams params;
  params.board_size = 8;
  params.steps = 3;
  const AeDataset ds = generate_dataset(10, 33, params);
  const std::string path = temp_path("lenia_test_dataset.bin");
  save_dataset(ds, path);
  const AeDataset loaded = load_dataset(path);
  CHECK(loaded.width == ds.width);
  CHECK(loaded.frames == ds.frames);

  // truncation is detected
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
  out.close();
  CHECK_THROWS_WITH_AS(load_dataset(path), doctest::Contains("truncated"), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("train: descent on a small generated dataset, deterministic replay") {
  DatasetParams params;
  params.board_size = 8;
  params.steps = 9;
  const AeDataset ds = generate_dataset(30, 4, params);
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.batch_size = 8;
  cfg.seed = 5;
  const TrainResult a = train(ds, cfg);
  CHECK(a.history.size() == 50);
  CHECK(a.history.front().epoch == 1);
  CHECK(a.history.back().train_loss < a.history.front().train_loss);
  for (double v : a.model.w_enc) CHECK(std::isfinite(v));
  for (double v : a.model.w_dec) CHECK(std::isfinite(v));

  const TrainResult b = train(ds, cfg);
  CHECK(a.model == b.model);
  CHECK(a.history.size() == b.history.size());
  for (std::size_t k = 0; k < a.history.size(); ++k) {
    CHECK(a.history[k].train_loss == b.history[k].train_loss);
    CHECK(a.history[k].test_loss == b.history[k].test_loss);
  }
}

TEST_CASE("train: single constant frame is learned to below 1e-4") {
  const AeDataset ds = constant_dataset(1, 64, 0.5);
  TrainConfig cfg;
  cfg.epochs = 300;
  cfg.seed = 2;
  const TrainResult res = train(ds, cfg);
  CHECK(res.history.back().train_loss < 1e-4);
  CHECK(std::isnan(res.history.back().test_loss));  // no held-out sample exists
}

TEST_CASE("train: non-finite loss aborts with epoch/batch context") {
  const AeDataset ds = constant_dataset(4, 8, 0.5);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.learning_rate = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(train(ds, cfg), doctest::Contains("epoch"), std::runtime_error);
  CHECK_THROWS_AS(train(AeDataset{}, TrainConfig{}), std::invalid_argument);
}

TEST_CASE("model file: AEV1 round-trip and corruption handling") {
  const AeModel m = init_model(8, 3, 7);
  const std::string path = temp_path("lenia_test_model.aev1");
  save_model(m, path);
  CHECK(load_model(path) == m);

  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();

  auto rewrite = [&](const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
  };

  rewrite(bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("truncated"), std::runtime_error);

  std::string wrong_magic = bytes;
  wrong_magic[0] = 'X';
  rewrite(wrong_magic);
  CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("bad magic"), std::runtime_error);

  rewrite(bytes + "junk");
  CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("trailing"), std::runtime_error);
  std::filesystem::remove(path);
}

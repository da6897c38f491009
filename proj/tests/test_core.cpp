#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "lenia/board.hpp"
#include "lenia/board_io.hpp"
#include "lenia/convolve.hpp"
#include "lenia/growth.hpp"
#include "lenia/kernel.hpp"
#include "lenia/rng.hpp"
#include "lenia/simulate.hpp"

using namespace lenia;

namespace {

// Independent oracle: explicit modular indexing, no shared code with the
// library backends.
std::vector<double> oracle_convolve(const Board& b, const ConvKernel& k) {
  const int h = b.height, w = b.width, s = k.size(), c = s / 2;
  std::vector<double> out(b.cells.size(), 0.0);
  if (k.sum() == 0.0) return out;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int j = 0; j < s; ++j) {
        for (int i = 0; i < s; ++i) {
          const int yy = ((y + j - c) % h + h) % h;
          const int xx = ((x + i - c) % w + w) % w;
          acc += k.weight(j, i) * b.at(yy, xx);
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = acc / k.sum();
    }
  }
  return out;
}

Board shifted(const Board& b, int dy, int dx) {
  Board out(b.width, b.height);
  for (int y = 0; y < b.height; ++y) {
    for (int x = 0; x < b.width; ++x) {
      out.at(((y + dy) % b.height + b.height) % b.height,
             ((x + dx) % b.width + b.width) % b.width) = b.at(y, x);
    }
  }
  return out;
}

ConvKernel random_kernel(int size, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(size) * size);
  for (double& v : w) v = rng.uniform();
  return ConvKernel(size, std::move(w));
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("convolve: delta kernel is the identity") {
  const Board board = random_board(16, 12, 99);
  std::vector<double> w(9, 0.0);
  w[4] = 1.0;  // centre of a 3x3 kernel is (1, 1)
  const ConvKernel delta(3, w);
  for (const auto& out : {convolve_direct(board, delta), convolve(board, delta)}) {
    CHECK(max_abs_diff(out, board.cells) < 1e-12);
  }
}

TEST_CASE("convolve: constant field is an eigenfunction") {
  const Board board(10, 10, 0.5);
  Rng rng(3);
  const ConvKernel kernel = random_kernel(5, rng);
  for (double v : convolve(board, kernel)) {
    CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("convolve: single impulse spreads to the wrapped 3x3 block") {
  Board board(8, 8, 0.0);
  board.at(0, 0) = 1.0;
  const ConvKernel ones(3, std::vector<double>(9, 1.0));
  const auto direct = convolve_direct(board, ones);
  const auto fft = convolve(board, ones);
  const auto expected = oracle_convolve(board, ones);
  CHECK(max_abs_diff(direct, expected) == 0.0);
  CHECK(max_abs_diff(fft, expected) < 1e-12);
  // hand-derived: 1/9 at the 9 cells wrapping around (0, 0), 0 elsewhere
  int ninths = 0;
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const bool near = (y <= 1 || y == 7) && (x <= 1 || x == 7);
      if (near) {
        CHECK(direct[y * 8 + x] == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
        ++ninths;
      } else {
        CHECK(direct[y * 8 + x] == 0.0);
      }
    }
  }
  CHECK(ninths == 9);
}

TEST_CASE("convolve: kernel larger than the board is rejected") {
  const Board board(8, 8, 0.1);
  const ConvKernel big(9, std::vector<double>(81, 1.0));
  CHECK_THROWS_AS(convolve(board, big), std::invalid_argument);
  CHECK_THROWS_AS(convolve_direct(board, big), std::invalid_argument);
}

TEST_CASE("convolve: zero-sum kernel yields a zero field") {
  const Board board = random_board(8, 8, 5);
  const ConvKernel zero(3, std::vector<double>(9, 0.0));
  for (double v : convolve(board, zero)) CHECK(v == 0.0);
  for (double v : convolve_direct(board, zero)) CHECK(v == 0.0);
}

TEST_CASE("convolve: FFT and direct backends agree on random inputs") {
  Rng rng(2024);
  FftConvolver conv(64, 64);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Board board = random_board(64, 64, rng.next_u64());
    const ConvKernel kernel = random_kernel(16, rng);
    conv.load_kernel(kernel);
    worst = std::max(worst, max_abs_diff(conv.convolve(board), convolve_direct(board, kernel)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("convolve: translation equivariance on the torus") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Board board = random_board(32, 32, rng.next_u64());
    const ConvKernel kernel = random_kernel(16, rng);
    const int dy = static_cast<int>(rng.uniform() * 32);
    const int dx = static_cast<int>(rng.uniform() * 32);
    const auto moved_then_conv = convolve(shifted(board, dy, dx), kernel);
    auto conv_then_moved = convolve(board, kernel);
    Board tmp(32, 32);
    tmp.cells = conv_then_moved;  // fields from [0,1] boards stay in range
    CHECK(max_abs_diff(moved_then_conv, shifted(tmp, dy, dx).cells) < 1e-12);
  }
}

TEST_CASE("growth: peak, tails and the one-sigma point") {
  const GrowthParams p{};
  CHECK(growth(p.mu, p) == 1.0);
  CHECK(growth(100.0, p) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(growth(-100.0, p) == doctest::Approx(-1.0).epsilon(1e-15));
  // u = mu + sigma -> 2*exp(-1/2) - 1, frozen from a high-precision evaluation
  CHECK(growth(0.31 + 0.057, p) == doctest::Approx(0.21306131942526683).epsilon(1e-12));
  // growth(0) for default params is -1 to within 1e-6
  CHECK(std::abs(growth(0.0, p) - (-1.0)) < 1e-6);
}

TEST_CASE("step: all-zero board is a fixed point under default params") {
  const Board zeros(64, 64, 0.0);
  Rng rng(11);
  const ConvKernel kernel = random_kernel(16, rng);
  const Board next = step(zeros, kernel, GrowthParams{});
  CHECK(next == zeros);
}

TEST_CASE("step: saturated board decays by dt") {
  const Board ones(32, 32, 1.0);
  const ConvKernel ones_kernel(16, std::vector<double>(256, 1.0));
  const Board next = step(ones, ones_kernel, GrowthParams{});
  // potential is exactly 1, growth(1) ~ -1 within 1e-30
  for (double v : next.cells) CHECK(v == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("step: dt = 0 is the identity") {
  const Board board = random_board(24, 24, 4);
  Rng rng(5);
  const ConvKernel kernel = random_kernel(16, rng);
  CHECK(step(board, kernel, GrowthParams{0.31, 0.057, 0.0}) == board);
}

TEST_CASE("step: output range stays in [0, 1] for random inputs") {
  Rng rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    const Board board = random_board(32, 32, rng.next_u64());
    const ConvKernel kernel = random_kernel(16, rng);
    GrowthParams p;
    p.mu = rng.uniform();
    p.sigma = 0.01 + rng.uniform();
    p.dt = rng.uniform() * 2.0;
    const Board next = step(board, kernel, p);
    for (double v : next.cells) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("simulate: zero steps returns only the initial frame") {
  const Board board = random_board(16, 16, 8);
  const ConvKernel k(3, std::vector<double>(9, 1.0));
  const FrameSequence seq = simulate(board, k, GrowthParams{}, 0);
  CHECK(seq.frames.size() == 1);
  CHECK(seq.frames[0] == board);
}

TEST_CASE("simulate: all-zero rollout stays at the fixed point") {
  const Board zeros(32, 32, 0.0);
  Rng rng(21);
  const FrameSequence seq = simulate(zeros, random_kernel(16, rng), GrowthParams{}, 100);
  CHECK(seq.frames.size() == 101);
  for (const Board& frame : seq.frames) CHECK(frame == zeros);
}

TEST_CASE("simulate: bit-identical replay") {
  const Board board = random_board(64, 64, 77);
  Rng rng(14);
  const ConvKernel kernel = random_kernel(16, rng);
  const FrameSequence a = simulate(board, kernel, GrowthParams{}, 25);
  const FrameSequence b = simulate(board, kernel, GrowthParams{}, 25);
  CHECK(a == b);
}

TEST_CASE("random_board: seeded determinism and seed sensitivity") {
  CHECK(random_board(64, 64, 42) == random_board(64, 64, 42));
  CHECK(random_board(64, 64, 42) != random_board(64, 64, 43));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Board board = random_board(64, 64, seed);
    double mean = 0.0;
    for (double v : board.cells) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
      mean += v;
    }
    mean /= static_cast<double>(board.cells.size());
    CHECK(mean > 0.45);
    CHECK(mean < 0.55);
  }
}

TEST_CASE("board text format round-trips exactly") {
  const Board board = random_board(9, 7, 123);
  const std::string text = board_to_text(board);
  const Board parsed = board_from_text(text);
  CHECK(parsed.width == 9);
  CHECK(parsed.height == 7);
  CHECK(board_to_text(parsed) == text);  // stable after one quantization

  CHECK_THROWS_WITH_AS(board_from_text("0.5 1.5\n", "bad"),
                       doctest::Contains("outside [0, 1]"), std::runtime_error);
  CHECK_THROWS_WITH_AS(board_from_text("0.5 0.5\n0.5\n", "bad"),
                       doctest::Contains("expected 2 values"), std::runtime_error);
  CHECK_THROWS_AS(board_from_text("", "bad"), std::runtime_error);
}

TEST_CASE("PGM write/read round-trip") {
  const Board board = random_board(20, 15, 6);
  const std::string path = temp_path("lenia_test_board.pgm");
  write_pgm(board, path);
  const Board decoded = read_pgm(path);
  CHECK(decoded.width == board.width);
  CHECK(decoded.height == board.height);
  for (std::size_t k = 0; k < board.cells.size(); ++k) {
    CHECK(std::abs(decoded.cells[k] - board.cells[k]) <= 0.5 / 255.0 + 1e-12);
  }
  // a second encode of the decoded board reproduces the file bit-exactly
  const std::string path2 = temp_path("lenia_test_board2.pgm");
  write_pgm(decoded, path2);
  const Board twice = read_pgm(path2);
  CHECK(twice == decoded);
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

#pragma once

#include <memory>
#include <vector>

#include "lenia/board.hpp"
#include "lenia/kernel.hpp"

namespace lenia {

// Normalized toroidal cross-correlation. The kernel is anchored with its
// centre cell (size/2, size/2) on the target cell, covering offsets
// -size/2 .. size/2-1 on each axis:
//
//   out(y, x) = sum_{j,i} w(j, i) * A((y + j - c) mod H, (x + i - c) mod W) / sum(w)
//
// A zero-sum kernel yields an all-zero field. The output is a raw real
// field (not a Board); values are unbounded for arbitrary inputs.

// Reference backend: direct nested loops with modular indexing.
std::vector<double> convolve_direct(const Board& board, const ConvKernel& kernel);

// Production backend: FFTW r2c/c2r circular transforms. Plans are created
// once per (height, width) instance and reused across steps. Instances are
// cheap to replicate; do not share one between threads.
class FftConvolver {
 public:
  FftConvolver(int height, int width);
  ~FftConvolver();
  FftConvolver(FftConvolver&&) noexcept;
  FftConvolver& operator=(FftConvolver&&) noexcept;
  FftConvolver(const FftConvolver&) = delete;
  FftConvolver& operator=(const FftConvolver&) = delete;

  int height() const;
  int width() const;

  // Transforms the kernel spectrum once for reuse by convolve().
  void load_kernel(const ConvKernel& kernel);

  std::vector<double> convolve(const Board& board);
  void convolve(const Board& board, std::vector<double>& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience over FftConvolver.
std::vector<double> convolve(const Board& board, const ConvKernel& kernel);

}  // namespace lenia

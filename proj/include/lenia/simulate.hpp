#pragma once

#include <vector>

#include "lenia/board.hpp"
#include "lenia/convolve.hpp"
#include "lenia/growth.hpp"
#include "lenia/kernel.hpp"

namespace lenia {

// One rollout: frames[0] is the initial board, frames[i] the state after
// i update steps, so frames.size() == steps + 1.
struct FrameSequence {
  std::vector<Board> frames;
  int steps = 0;

  bool operator==(const FrameSequence&) const = default;
};

// A <- clamp(A + dt * G(K*A), 0, 1). The input board is not modified.
Board step(const Board& board, const ConvKernel& kernel, const GrowthParams& params);

// Repeated step() with one FFT plan shared across all steps.
FrameSequence simulate(const Board& initial, const ConvKernel& kernel,
                       const GrowthParams& params, int steps);

}  // namespace lenia

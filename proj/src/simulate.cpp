#include "lenia/simulate.hpp"

#include <algorithm>
#include <stdexcept>

namespace lenia {

namespace {

Board step_with(FftConvolver& conv, std::vector<double>& potential, const Board& board,
                const GrowthParams& params) {
  conv.convolve(board, potential);
  Board next = board;
  for (std::size_t k = 0; k < next.cells.size(); ++k) {
    next.cells[k] = std::clamp(board.cells[k] + params.dt * growth(potential[k], params), 0.0, 1.0);
  }
  return next;
}

}  // namespace

Board step(const Board& board, const ConvKernel& kernel, const GrowthParams& params) {
  params.validate();
  FftConvolver conv(board.height, board.width);
  conv.load_kernel(kernel);
  std::vector<double> potential;
  return step_with(conv, potential, board, params);
}

FrameSequence simulate(const Board& initial, const ConvKernel& kernel,
                       const GrowthParams& params, int steps) {
  params.validate();
  if (steps < 0) {
    throw std::invalid_argument("simulate: steps must be >= 0");
  }
  FftConvolver conv(initial.height, initial.width);
  conv.load_kernel(kernel);

  FrameSequence seq;
  seq.steps = steps;
  seq.frames.reserve(static_cast<std::size_t>(steps) + 1);
  seq.frames.push_back(initial);
  std::vector<double> potential;
  for (int i = 0; i < steps; ++i) {
    seq.frames.push_back(step_with(conv, potential, seq.frames.back(), params));
  }
  return seq;
}

}  // namespace lenia

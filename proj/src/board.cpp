#include "lenia/board.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lenia/rng.hpp"

namespace lenia {

Board::Board(int width, int height, double fill)
    : width(width), height(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("Board: dimensions must be positive");
  }
  cells.assign(static_cast<std::size_t>(width) * height, fill);
}

void Board::validate() const {
  if (cells.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("Board: cell count " + std::to_string(cells.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
  for (double v : cells) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("Board: cell value " + std::to_string(v) +
                                  " outside [0, 1]");
    }
  }
}

Board random_board(int width, int height, std::uint64_t seed) {
  Board board(width, height);
  Rng rng(seed);
  for (double& cell : board.cells) {
    cell = rng.uniform();
  }
  return board;
}

}  // namespace lenia

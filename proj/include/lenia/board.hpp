#pragma once

#include <cstdint>
#include <vector>

namespace lenia {

// The Lenia world: a toroidal grid of cell states in [0, 1], row-major.
struct Board {
  int width = 0;
  int height = 0;
  std::vector<double> cells;

  Board() = default;
  Board(int width, int height, double fill = 0.0);

  double at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * width + col];
  }
  double& at(int row, int col) {
    return cells[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t cell_count() const { return cells.size(); }

  // Throws if a cell is outside [0, 1] or the cell count is wrong.
  void validate() const;

  bool operator==(const Board&) const = default;
};

// Every cell drawn uniform in [0, 1) from Rng(seed), row-major order.
Board random_board(int width, int height, std::uint64_t seed);

}  // namespace lenia

#include "cli/render.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lenia/board_io.hpp"

namespace lenia::cli {

void render_kernel_heatmap(const KernelGenome& genome, const std::string& path, int scale) {
  if (scale < 1) throw std::invalid_argument("render_kernel_heatmap: scale must be >= 1");
  const int side = kGenomeSize * scale;
  std::vector<unsigned char> pixels(static_cast<std::size_t>(side) * side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const double g = genome.gene(y / scale, x / scale);
      pixels[static_cast<std::size_t>(y) * side + x] =
          static_cast<unsigned char>(std::lround(g * 255.0));
    }
  }
  write_pgm_bytes(side, side, pixels, path);
}

}  // namespace lenia::cli

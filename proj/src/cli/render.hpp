#pragma once

#include <string>

#include "lenia/genome.hpp"

namespace lenia::cli {

// Grayscale PGM of the genome, pixel = round(gene * 255), optionally
// nearest-neighbor upscaled by an integer factor.
void render_kernel_heatmap(const KernelGenome& genome, const std::string& path, int scale = 1);

}  // namespace lenia::cli

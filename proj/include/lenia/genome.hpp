#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lenia/kernel.hpp"
#include "lenia/rng.hpp"

namespace lenia {

inline constexpr int kGenomeSize = 16;
inline constexpr int kGeneCount = kGenomeSize * kGenomeSize;

// Round to 3 decimals, half away from zero: floor(v * 1000 + 0.5) / 1000
// for non-negative v. This exact rule keeps genome snapshots portable.
double round3(double v);

// The evolved individual: a 16x16 grid of gene values in [0, 1], each
// equal to its own 3-decimal rounding. Immutable value type.
class KernelGenome {
 public:
  KernelGenome();  // all genes 0.000
  explicit KernelGenome(std::vector<double> genes);

  double gene(int row, int col) const {
    return genes_[static_cast<std::size_t>(row) * kGenomeSize + col];
  }
  const std::vector<double>& genes() const { return genes_; }

  bool operator==(const KernelGenome&) const = default;

 private:
  std::vector<double> genes_;
};

// Ring geometry, in units of the kernel half-width (size / 2). Distances
// are measured from the geometric grid centre (7.5, 7.5).
struct RingSpec {
  double radius_center = 0.5;
  double shell_width = 0.15;

  void validate() const;
};

// Each gene uniform in [0, 1) then rounded to 3 decimals.
KernelGenome random_genome(std::uint64_t seed);

// Per gene: with probability rate, replace by a fresh rounded uniform
// draw; otherwise copy. Resampling does not exclude the old value.
KernelGenome mutate(const KernelGenome& parent, double rate, Rng& rng);
KernelGenome mutate(const KernelGenome& parent, double rate, std::uint64_t seed);

// Smoothed Gaussian shell: gene = exp(-(r - radius_center)^2 / (2 w^2))
// for normalized radius r <= 1, 0 beyond, rounded to 3 decimals.
KernelGenome ring_kernel(const RingSpec& spec);

struct CenterMass {
  double center_row = 0.0;
  double center_col = 0.0;
  double central_mass_fraction = 0.0;  // mass within r <= 0.5 of centre
};

// Weight-averaged gene position plus the mass fraction near the grid
// centre. A zero-mass genome reports the geometric centre and fraction 0.
CenterMass center_mass_density(const KernelGenome& genome);

// Genotype -> phenotype bridge: weights copied verbatim, sum cached.
ConvKernel to_conv_kernel(const KernelGenome& genome);

// Snapshot file: 16 lines of 16 space-separated 3-decimal values.
std::string genome_to_text(const KernelGenome& genome);
KernelGenome genome_from_text(const std::string& text, const std::string& source = "<string>");
void save_genome(const KernelGenome& genome, const std::string& path);
KernelGenome load_genome(const std::string& path);

}  // namespace lenia

#include "lenia/genome.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lenia {

namespace {

constexpr double kCenter = (kGenomeSize - 1) / 2.0;  // 7.5: geometric grid centre
constexpr double kHalfWidth = kGenomeSize / 2.0;     // 8.0

double normalized_radius(int row, int col) {
  const double dr = row - kCenter;
  const double dc = col - kCenter;
  return std::sqrt(dr * dr + dc * dc) / kHalfWidth;
}

}  // namespace

double round3(double v) {
  if (v < 0.0) {
    return -std::floor(-v * 1000.0 + 0.5) / 1000.0;
  }
  return std::floor(v * 1000.0 + 0.5) / 1000.0;
}

KernelGenome::KernelGenome() : genes_(kGeneCount, 0.0) {}

KernelGenome::KernelGenome(std::vector<double> genes) : genes_(std::move(genes)) {
  if (genes_.size() != kGeneCount) {
    throw std::invalid_argument("KernelGenome: expected " + std::to_string(kGeneCount) +
                                " genes, got " + std::to_string(genes_.size()));
  }
  for (double g : genes_) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw std::invalid_argument("KernelGenome: gene " + std::to_string(g) + " outside [0, 1]");
    }
    if (g != round3(g)) {
      throw std::invalid_argument("KernelGenome: gene " + std::to_string(g) +
                                  " is not 3-decimal quantized");
    }
  }
}

void RingSpec::validate() const {
  if (!(radius_center > 0.0 && radius_center <= 1.0)) {
    throw std::invalid_argument("RingSpec: radius_center must be in (0, 1]");
  }
  if (!(shell_width > 0.0)) {
    throw std::invalid_argument("RingSpec: shell_width must be > 0");
  }
}

KernelGenome random_genome(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> genes(kGeneCount);
  for (double& g : genes) {
    g = round3(rng.uniform());
  }
  return KernelGenome(std::move(genes));
}

KernelGenome mutate(const KernelGenome& parent, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("mutate: rate must be in [0, 1]");
  }
  std::vector<double> genes = parent.genes();
  for (double& g : genes) {
    if (rng.uniform() < rate) {
      g = round3(rng.uniform());
    }
  }
  return KernelGenome(std::move(genes));
}

KernelGenome mutate(const KernelGenome& parent, double rate, std::uint64_t seed) {
  Rng rng(seed);
  return mutate(parent, rate, rng);
}

KernelGenome ring_kernel(const RingSpec& spec) {
  spec.validate();
  std::vector<double> genes(kGeneCount, 0.0);
  for (int row = 0; row < kGenomeSize; ++row) {
    for (int col = 0; col < kGenomeSize; ++col) {
      const double r = normalized_radius(row, col);
      if (r <= 1.0) {
        const double d = r - spec.radius_center;
        genes[static_cast<std::size_t>(row) * kGenomeSize + col] =
            round3(std::exp(-(d * d) / (2.0 * spec.shell_width * spec.shell_width)));
      }
    }
  }
  return KernelGenome(std::move(genes));
}

CenterMass center_mass_density(const KernelGenome& genome) {
  double total = 0.0;
  double row_acc = 0.0;
  double col_acc = 0.0;
  double central = 0.0;
  for (int row = 0; row < kGenomeSize; ++row) {
    for (int col = 0; col < kGenomeSize; ++col) {
      const double g = genome.gene(row, col);
      total += g;
      row_acc += g * row;
      col_acc += g * col;
      if (normalized_radius(row, col) <= 0.5) {
        central += g;
      }
    }
  }
  if (total == 0.0) {
    return {kCenter, kCenter, 0.0};
  }
  return {row_acc / total, col_acc / total, central / total};
}

ConvKernel to_conv_kernel(const KernelGenome& genome) {
  return ConvKernel(kGenomeSize, genome.genes());
}

std::string genome_to_text(const KernelGenome& genome) {
  std::string out;
  out.reserve(kGeneCount * 6);
  char buf[16];
  for (int row = 0; row < kGenomeSize; ++row) {
    for (int col = 0; col < kGenomeSize; ++col) {
      std::snprintf(buf, sizeof(buf), "%.3f", genome.gene(row, col));
      if (col > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

KernelGenome genome_from_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::vector<double> genes;
  genes.reserve(kGeneCount);
  std::string line;
  int line_no = 0;
  int rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int count = 0;
    double v = 0.0;
    while (ls >> v) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::runtime_error(source + ":" + std::to_string(line_no) + ": gene value " +
                                 std::to_string(v) + " outside [0, 1]");
      }
      genes.push_back(round3(v));
      ++count;
    }
    if (!ls.eof()) {
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": malformed number");
    }
    if (count != kGenomeSize) {
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(kGenomeSize) + " values per row, got " +
                               std::to_string(count));
    }
    ++rows;
  }
  if (rows != kGenomeSize) {
    throw std::runtime_error(source + ": expected " + std::to_string(kGenomeSize) +
                             " rows, got " + std::to_string(rows));
  }
  return KernelGenome(std::move(genes));
}

void save_genome(const KernelGenome& genome, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << genome_to_text(genome);
  if (!out) throw std::runtime_error("short write to " + path);
}

KernelGenome load_genome(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return genome_from_text(buf.str(), path);
}

}  // namespace lenia

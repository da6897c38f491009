#pragma once

#include <cstdint>
#include <random>

namespace lenia {

// SplitMix64 finalizer. Bijective on 64-bit values, well mixed.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based substream derivation: stream k of master seed m is
// mix64(m + (k + 1) * golden). Consumers document their stream ids so a
// run is replayable from the master seed alone.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
  return mix64(master + (stream + 1) * kGolden);
}

// Deterministic uniform source: std::mt19937_64 with the top 53 bits of
// each draw mapped to a double in [0, 1). The engine output is pinned by
// the standard and the mapping is explicit, so sequences are identical
// across platforms (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lenia

#pragma once

#include <memory>
#include <vector>

#include "lenia/autoencoder.hpp"
#include "lenia/board.hpp"
#include "lenia/simulate.hpp"

namespace lenia {

// Which rollout frames feed the fitness metric.
struct SamplingStrategy {
  enum class Kind { kAllFrames, kEveryNth, kLastK };

  Kind kind = Kind::kEveryNth;
  int param = 10;  // n for kEveryNth, k for kLastK; unused for kAllFrames

  static SamplingStrategy all_frames() { return {Kind::kAllFrames, 1}; }
  static SamplingStrategy every_nth(int n) { return {Kind::kEveryNth, n}; }
  static SamplingStrategy last_k(int k) { return {Kind::kLastK, k}; }

  void validate() const;
  bool operator==(const SamplingStrategy&) const = default;
};

enum class FitnessKind { kVot, kAe, kAevot };

struct FitnessSpec {
  FitnessKind kind = FitnessKind::kVot;
  double alive_threshold = 0.1;  // used by VoT and AEVoT
  SamplingStrategy sampling{};
  std::shared_ptr<const AeModel> model;  // required for AE and AEVoT

  void validate() const;
};

// AllFrames keeps everything including frame 0; EveryNth(n) takes frames
// n, 2n, 3n, ... (1-based step counting, frame 0 excluded); LastK(k)
// keeps the final min(k, len) frames in order.
std::vector<Board> sample_frames(const FrameSequence& seq, const SamplingStrategy& strategy);

// Cells with value >= threshold count as alive.
int alive_count(const Board& board, double threshold);

// Divisor-N standard deviation. Errors on an empty list.
double population_stddev(const std::vector<double>& values);

// Spread of alive-cell counts across the sampled frames.
double vot_fitness(const FrameSequence& seq, const FitnessSpec& spec);

// Spread of per-frame autoencoder reconstruction MSE losses.
double ae_fitness(const FrameSequence& seq, const FitnessSpec& spec);

// VoT computed on autoencoder-reconstructed frames.
double aevot_fitness(const FrameSequence& seq, const FitnessSpec& spec);

// Dispatch on spec.kind.
double fitness(const FrameSequence& seq, const FitnessSpec& spec);

}  // namespace lenia

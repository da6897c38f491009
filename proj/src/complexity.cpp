#include "lenia/complexity.hpp"

#include <cmath>
#include <stdexcept>

namespace lenia {

void SamplingStrategy::validate() const {
  if (kind != Kind::kAllFrames && param < 1) {
    throw std::invalid_argument("SamplingStrategy: parameter must be >= 1");
  }
}

void FitnessSpec::validate() const {
  sampling.validate();
  if (!(alive_threshold >= 0.0 && alive_threshold <= 1.0)) {
    throw std::invalid_argument("FitnessSpec: alive_threshold must be in [0, 1]");
  }
  if ((kind == FitnessKind::kAe || kind == FitnessKind::kAevot) && !model) {
    throw std::invalid_argument("FitnessSpec: AE and AEVoT fitness require a trained model");
  }
}

std::vector<Board> sample_frames(const FrameSequence& seq, const SamplingStrategy& strategy) {
  strategy.validate();
  if (seq.frames.empty()) {
    throw std::invalid_argument("sample_frames: empty frame sequence");
  }
  const int len = static_cast<int>(seq.frames.size());
  std::vector<Board> out;
  switch (strategy.kind) {
    case SamplingStrategy::Kind::kAllFrames:
      out = seq.frames;
      break;
    case SamplingStrategy::Kind::kEveryNth:
      // 1-based step counting: frames n, 2n, ...; frame 0 never included.
      for (int idx = strategy.param; idx < len; idx += strategy.param) {
        out.push_back(seq.frames[idx]);
      }
      break;
    case SamplingStrategy::Kind::kLastK: {
      const int k = std::min(strategy.param, len);
      out.assign(seq.frames.end() - k, seq.frames.end());
      break;
    }
  }
  return out;
}

int alive_count(const Board& board, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("alive_count: threshold must be in [0, 1]");
  }
  int count = 0;
  for (double v : board.cells) {
    if (v >= threshold) ++count;
  }
  return count;
}

double population_stddev(const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("population_stddev: empty list");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) {
    const double d = v - mean;
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(values.size()));
}

namespace {

std::vector<Board> sampled_or_throw(const FrameSequence& seq, const FitnessSpec& spec,
                                    const char* what) {
  std::vector<Board> sampled = sample_frames(seq, spec.sampling);
  if (sampled.empty()) {
    throw std::invalid_argument(std::string(what) + ": sampling produced no frames");
  }
  return sampled;
}

}  // namespace

double vot_fitness(const FrameSequence& seq, const FitnessSpec& spec) {
  if (spec.kind != FitnessKind::kVot) {
    throw std::invalid_argument("vot_fitness: spec.kind is not VoT");
  }
  spec.validate();
  const std::vector<Board> sampled = sampled_or_throw(seq, spec, "vot_fitness");
  std::vector<double> counts;
  counts.reserve(sampled.size());
  for (const Board& frame : sampled) {
    counts.push_back(static_cast<double>(alive_count(frame, spec.alive_threshold)));
  }
  return population_stddev(counts);
}

double ae_fitness(const FrameSequence& seq, const FitnessSpec& spec) {
  if (spec.kind != FitnessKind::kAe) {
    throw std::invalid_argument("ae_fitness: spec.kind is not AE");
  }
  spec.validate();
  const std::vector<Board> sampled = sampled_or_throw(seq, spec, "ae_fitness");
  std::vector<double> losses;
  losses.reserve(sampled.size());
  for (const Board& frame : sampled) {
    losses.push_back(mse(frame.cells, forward(*spec.model, frame.cells).output));
  }
  return population_stddev(losses);
}

double aevot_fitness(const FrameSequence& seq, const FitnessSpec& spec) {
  if (spec.kind != FitnessKind::kAevot) {
    throw std::invalid_argument("aevot_fitness: spec.kind is not AEVoT");
  }
  spec.validate();
  const std::vector<Board> sampled = sampled_or_throw(seq, spec, "aevot_fitness");
  std::vector<double> counts;
  counts.reserve(sampled.size());
  for (const Board& frame : sampled) {
    const ForwardResult res = forward(*spec.model, frame.cells);
    int count = 0;
    for (double v : res.output) {
      if (v >= spec.alive_threshold) ++count;
    }
    counts.push_back(static_cast<double>(count));
  }
  return population_stddev(counts);
}

double fitness(const FrameSequence& seq, const FitnessSpec& spec) {
  switch (spec.kind) {
    case FitnessKind::kVot:
      return vot_fitness(seq, spec);
    case FitnessKind::kAe:
      return ae_fitness(seq, spec);
    case FitnessKind::kAevot:
      return aevot_fitness(seq, spec);
  }
  throw std::logic_error("fitness: unknown kind");
}

}  // namespace lenia

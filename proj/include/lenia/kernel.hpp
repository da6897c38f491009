#pragma once

#include <vector>

namespace lenia {

// Square neighborhood mask. Weights are non-negative and the weight sum
// is cached at construction; the object is immutable afterwards, so the
// cache cannot go stale.
class ConvKernel {
 public:
  ConvKernel(int size, std::vector<double> weights);

  int size() const { return size_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int row, int col) const {
    return weights_[static_cast<std::size_t>(row) * size_ + col];
  }
  double sum() const { return sum_; }

  bool operator==(const ConvKernel&) const = default;

 private:
  int size_ = 0;
  std::vector<double> weights_;
  double sum_ = 0.0;
};

}  // namespace lenia

#include "lenia/kernel.hpp"

#include <stdexcept>
#include <string>

namespace lenia {

ConvKernel::ConvKernel(int size, std::vector<double> weights)
    : size_(size), weights_(std::move(weights)) {
  if (size_ <= 0) {
    throw std::invalid_argument("ConvKernel: size must be positive");
  }
  if (weights_.size() != static_cast<std::size_t>(size_) * size_) {
    throw std::invalid_argument("ConvKernel: expected " + std::to_string(size_ * size_) +
                                " weights, got " + std::to_string(weights_.size()));
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("ConvKernel: negative weight " + std::to_string(w));
    }
    sum_ += w;
  }
}

}  // namespace lenia

#pragma once

#include <cmath>
#include <stdexcept>

namespace lenia {

// Growth mapping parameters: a Gaussian bump centred at mu with spread
// sigma, scaled into [-1, 1]. dt is the integration step.
struct GrowthParams {
  double mu = 0.31;
  double sigma = 0.057;
  double dt = 0.1;

  void validate() const {
    if (!(sigma > 0.0)) {
      throw std::invalid_argument("GrowthParams: sigma must be > 0");
    }
    if (!(dt >= 0.0)) {
      throw std::invalid_argument("GrowthParams: dt must be >= 0");
    }
  }

  bool operator==(const GrowthParams&) const = default;
};

// G(u) = 2*exp(-(u - mu)^2 / (2*sigma^2)) - 1. Total on all reals,
// peaks at 1 for u == mu and tends to -1 in the tails.
inline double growth(double u, const GrowthParams& p) {
  const double d = u - p.mu;
  return 2.0 * std::exp(-(d * d) / (2.0 * p.sigma * p.sigma)) - 1.0;
}

}  // namespace lenia

#ifndef GEOFLOW_ROBUST_HPP
#define GEOFLOW_ROBUST_HPP

#include <cmath>

namespace geoflow {

struct RobustLossParams {
  double epsilon = 0.01;
  double q = 0.4;

  bool valid() const { return epsilon > 0.0 && q > 0.0 && q <= 1.0; }
};

/// (|x| + epsilon)^q
inline double robust_sigma(double x, const RobustLossParams& p = {}) {
  return std::pow(std::abs(x) + p.epsilon, p.q);
}

/// d sigma / dx, with sign(0) = 0.
inline double robust_sigma_derivative(double x, const RobustLossParams& p = {}) {
  if (x == 0.0) return 0.0;
  const double s = x > 0.0 ? 1.0 : -1.0;
  return s * p.q * std::pow(std::abs(x) + p.epsilon, p.q - 1.0);
}

}  // namespace geoflow

#endif  // GEOFLOW_ROBUST_HPP

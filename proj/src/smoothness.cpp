#include "geoflow/smoothness.hpp"

#include <cmath>
#include <stdexcept>

namespace geoflow {

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

SmoothnessLoss smoothness_loss(const FlowField& flow, const Image& image,
                               const SmoothnessParams& params) {
  if (!params.valid()) throw std::invalid_argument("smoothness_loss: order must be 1 or 2");
  require_same_size(flow, image, "smoothness_loss");
  const int h = flow.height(), w = flow.width(), k = params.order;

  SmoothnessLoss out{0.0, FlowField(h, w)};
  const long sites = static_cast<long>(h) * std::max(0, w - k) +
                     static_cast<long>(std::max(0, h - k)) * w;
  if (sites == 0) return out;
  const double inv_n = 1.0 / static_cast<double>(sites);

  // Stencil coefficients for the forward difference along one axis.
  const double first[] = {-1.0, 1.0};
  const double second[] = {1.0, -2.0, 1.0};
  const double* coeff = k == 1 ? first : second;

  for (int axis = 0; axis < 2; ++axis) {
    const int dr = axis == 1 ? 1 : 0;
    const int dc = axis == 0 ? 1 : 0;
    const int rows = h - k * dr, cols = w - k * dc;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        double edge = 0.0;
        for (int ch = 0; ch < 3; ++ch) {
          edge += std::abs(image.channels[ch](r + dr, c + dc) - image.channels[ch](r, c));
        }
        const double weight = std::exp(-params.mu / 3.0 * edge) * inv_n;
        for (const Plane* comp : {&flow.u, &flow.v}) {
          double diff = 0.0;
          for (int t = 0; t <= k; ++t) diff += coeff[t] * (*comp)(r + t * dr, c + t * dc);
          out.value += weight * std::abs(diff);
          const double g = weight * sign(diff);
          if (g == 0.0) continue;
          Plane& target = comp == &flow.u ? out.grad.u : out.grad.v;
          for (int t = 0; t <= k; ++t) target(r + t * dr, c + t * dc) += g * coeff[t];
        }
      }
    }
  }
  return out;
}

}  // namespace geoflow

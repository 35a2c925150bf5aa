#ifndef GEOFLOW_NON_INTERSECTION_HPP
#define GEOFLOW_NON_INTERSECTION_HPP

#include <array>

#include "geoflow/geometry.hpp"
#include "geoflow/raster.hpp"
#include "geoflow/robust.hpp"

namespace geoflow {

struct PixelOffset {
  int dr;
  int dc;
};

/// 3x3 window around a centre pixel. Neighbours are numbered clockwise from the
/// top-left: TL, T, TR, R, BR, B, BL, L.
struct IntersectUnit {
  int row = 1;
  int col = 1;

  static constexpr std::array<PixelOffset, 8> kNeighbors{
      {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}}};

  bool inside(int height, int width) const {
    return row >= 1 && col >= 1 && row <= height - 2 && col <= width - 2;
  }
};

/// exp(-(1/3) * sum_rgb |neighbor - center|)
double color_weight(const Color& center, const Color& neighbor);

/// Per-pair crossing test for the centre and one neighbour, using grid positions and flow.
IntersectCoeffs<double> unit_pair_coeffs(const IntersectUnit& unit, int neighbor,
                                         const FlowField& flow);

/// (1/8) sum_i [crossing_i and both visible] * w_i * sigma(exp(-(lambda_i - mu_i)^2))
double unit_loss(const IntersectUnit& unit, const FlowField& flow, const Image& image,
                 const OcclusionMask& occ, const RobustLossParams& robust = {});

struct NonIntersectionLoss {
  double value = 0.0;
  FlowField grad;
};

/// Mean of unit_loss over all (H-2)(W-2) units. The gradient holds crossing indicators,
/// masks and colour weights fixed.
NonIntersectionLoss non_intersection_loss(const Image& image, const FlowField& flow,
                                          const OcclusionMask& occ,
                                          const RobustLossParams& robust = {});

/// Number of (unit, neighbour) pairs that cross with both endpoints visible.
long crossing_count(const FlowField& flow, const OcclusionMask& occ);

}  // namespace geoflow

#endif  // GEOFLOW_NON_INTERSECTION_HPP

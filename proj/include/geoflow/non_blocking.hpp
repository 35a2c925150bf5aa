#ifndef GEOFLOW_NON_BLOCKING_HPP
#define GEOFLOW_NON_BLOCKING_HPP

#include <array>

#include "geoflow/geometry.hpp"
#include "geoflow/non_intersection.hpp"
#include "geoflow/raster.hpp"

namespace geoflow {

/// 4x4 window anchored at its top-left pixel. The middle 2x2 block forms the quad
/// A, B, C, D (clockwise in image coordinates from the top-left); the other twelve
/// pixels form the peripheral ring, listed clockwise from the anchor.
struct BlockUnit {
  int row = 0;
  int col = 0;

  static constexpr std::array<PixelOffset, 4> kQuad{{{1, 1}, {1, 2}, {2, 2}, {2, 1}}};
  static constexpr std::array<PixelOffset, 12> kRing{{{0, 0},
                                                      {0, 1},
                                                      {0, 2},
                                                      {0, 3},
                                                      {1, 3},
                                                      {2, 3},
                                                      {3, 3},
                                                      {3, 2},
                                                      {3, 1},
                                                      {3, 0},
                                                      {2, 0},
                                                      {1, 0}}};

  bool inside(int height, int width) const {
    return row >= 0 && col >= 0 && row <= height - 4 && col <= width - 4;
  }
};

inline constexpr double kMinIntrusionDistance = 1e-9;

/// (1/12) sum_i [P_i inside quad ABCD at t+1, all five pixels visible] * exp(-1/d_i),
/// d_i the distance from P_i to the nearest side of the quad.
double unit_blocking_loss(const BlockUnit& unit, const FlowField& flow, const OcclusionMask& occ);

struct NonBlockingLoss {
  double value = 0.0;
  FlowField grad;
};

/// Mean of unit_blocking_loss over all (H-3)(W-3) units. Gradient flows through d_i
/// only; ties between nearest sides go to the first side in AB, BC, CD, DA order.
NonBlockingLoss non_blocking_loss(const FlowField& flow, const OcclusionMask& occ);

/// Number of (unit, peripheral) pairs flagged as blocked.
long blocked_count(const FlowField& flow, const OcclusionMask& occ);

}  // namespace geoflow

#endif  // GEOFLOW_NON_BLOCKING_HPP

#ifndef GEOFLOW_OCCLUSION_HPP
#define GEOFLOW_OCCLUSION_HPP

#include "geoflow/raster.hpp"

namespace geoflow {

struct OcclusionParams {
  double alpha_consistency = 0.01;
  double beta_offset = 0.5;  // squared pixels
};

/// Forward-backward consistency check. A pixel is occluded when
///   |f + b_w|^2 > alpha * (|f|^2 + |b_w|^2) + beta,
/// with b_w the backward flow sampled at the forward target, or when the target
/// leaves the frame.
OcclusionMask occlusion_mask(const FlowField& forward, const FlowField& backward,
                             const OcclusionParams& params = {});

}  // namespace geoflow

#endif  // GEOFLOW_OCCLUSION_HPP

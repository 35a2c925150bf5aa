#ifndef GEOFLOW_OBJECTIVE_HPP
#define GEOFLOW_OBJECTIVE_HPP

#include "geoflow/occlusion.hpp"
#include "geoflow/raster.hpp"
#include "geoflow/robust.hpp"
#include "geoflow/smoothness.hpp"

namespace geoflow {

struct LossConfig {
  double alpha_census = 1.0;
  double alpha_smooth = 4.0;
  double alpha_inter = 0.01;
  double alpha_block = 0.01;
  SmoothnessParams smooth;
  RobustLossParams robust;
  OcclusionParams occlusion;
  int census_radius = 1;

  void validate() const;
};

/// Unweighted value of every term plus the weighted total.
struct LossTerms {
  double census = 0.0;
  double smoothness = 0.0;
  double non_intersection = 0.0;
  double non_blocking = 0.0;
  double total = 0.0;
};

struct LossBreakdown {
  LossTerms terms;
  FlowField grad_forward;
  FlowField grad_backward;
};

/// Weighted objective with fixed occlusion masks. Smoothness and the two geometric
/// terms are summed over both flow directions, each with its own frame and mask.
LossBreakdown evaluate_objective(const Image& frame_t, const Image& frame_t1,
                                 const FlowField& forward, const FlowField& backward,
                                 const OcclusionMask& occ_t, const OcclusionMask& occ_t1,
                                 const LossConfig& cfg);

/// As evaluate_objective, with masks estimated from the flows by forward-backward consistency.
LossBreakdown total_loss(const Image& frame_t, const Image& frame_t1, const FlowField& forward,
                         const FlowField& backward, const LossConfig& cfg = {});

}  // namespace geoflow

#endif  // GEOFLOW_OBJECTIVE_HPP

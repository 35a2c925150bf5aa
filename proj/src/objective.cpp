#include "geoflow/objective.hpp"

#include <stdexcept>

#include "geoflow/census.hpp"
#include "geoflow/non_blocking.hpp"
#include "geoflow/non_intersection.hpp"

namespace geoflow {

void LossConfig::validate() const {
  if (alpha_census < 0 || alpha_smooth < 0 || alpha_inter < 0 || alpha_block < 0) {
    throw std::invalid_argument("LossConfig: loss weights must be non-negative");
  }
  if (!smooth.valid()) throw std::invalid_argument("LossConfig: mu >= 0 and k in {1, 2}");
  if (!robust.valid()) throw std::invalid_argument("LossConfig: epsilon > 0 and 0 < q <= 1");
  if (occlusion.alpha_consistency < 0 || occlusion.beta_offset < 0) {
    throw std::invalid_argument("LossConfig: occlusion parameters must be non-negative");
  }
  if (census_radius < 1) throw std::invalid_argument("LossConfig: census radius must be >= 1");
}

LossBreakdown evaluate_objective(const Image& frame_t, const Image& frame_t1,
                                 const FlowField& forward, const FlowField& backward,
                                 const OcclusionMask& occ_t, const OcclusionMask& occ_t1,
                                 const LossConfig& cfg) {
  cfg.validate();
  require_same_size(frame_t, frame_t1, "total_loss");
  require_same_size(frame_t, forward, "total_loss");
  require_same_size(frame_t, backward, "total_loss");
  const int h = frame_t.height(), w = frame_t.width();

  LossBreakdown out{{}, FlowField(h, w), FlowField(h, w)};
  auto& t = out.terms;

  const auto add = [](FlowField& dst, const FlowField& src, double weight) {
    dst.u += weight * src.u;
    dst.v += weight * src.v;
  };

  // Terms are always evaluated so that ablated runs still report them.
  {
    const auto census = census_loss(frame_t, frame_t1, forward, backward, occ_t, occ_t1,
                                    cfg.robust, cfg.census_radius);
    t.census = census.value;
    add(out.grad_forward, census.grad_forward, cfg.alpha_census);
    add(out.grad_backward, census.grad_backward, cfg.alpha_census);
  }
  {
    const auto fwd = smoothness_loss(forward, frame_t, cfg.smooth);
    const auto bwd = smoothness_loss(backward, frame_t1, cfg.smooth);
    t.smoothness = fwd.value + bwd.value;
    add(out.grad_forward, fwd.grad, cfg.alpha_smooth);
    add(out.grad_backward, bwd.grad, cfg.alpha_smooth);
  }
  {
    const auto fwd = non_intersection_loss(frame_t, forward, occ_t, cfg.robust);
    const auto bwd = non_intersection_loss(frame_t1, backward, occ_t1, cfg.robust);
    t.non_intersection = fwd.value + bwd.value;
    add(out.grad_forward, fwd.grad, cfg.alpha_inter);
    add(out.grad_backward, bwd.grad, cfg.alpha_inter);
  }
  {
    const auto fwd = non_blocking_loss(forward, occ_t);
    const auto bwd = non_blocking_loss(backward, occ_t1);
    t.non_blocking = fwd.value + bwd.value;
    add(out.grad_forward, fwd.grad, cfg.alpha_block);
    add(out.grad_backward, bwd.grad, cfg.alpha_block);
  }

  t.total = cfg.alpha_census * t.census + cfg.alpha_smooth * t.smoothness +
            cfg.alpha_inter * t.non_intersection + cfg.alpha_block * t.non_blocking;
  return out;
}

LossBreakdown total_loss(const Image& frame_t, const Image& frame_t1, const FlowField& forward,
                         const FlowField& backward, const LossConfig& cfg) {
  require_same_size(forward, backward, "total_loss");
  const auto occ_t = occlusion_mask(forward, backward, cfg.occlusion);
  const auto occ_t1 = occlusion_mask(backward, forward, cfg.occlusion);
  return evaluate_objective(frame_t, frame_t1, forward, backward, occ_t, occ_t1, cfg);
}

}  // namespace geoflow

#include "geoflow/optimize.hpp"

#include <cmath>
#include <string>

#include "geoflow/occlusion.hpp"
#include "geoflow/pyramid.hpp"

namespace geoflow {

void OptimizeConfig::validate() const {
  adam.validate();
  if (iterations < 0) throw std::invalid_argument("optimize: iterations must be >= 0");
  if (levels < 1) throw std::invalid_argument("optimize: levels must be >= 1");
  if (refresh < 1) throw std::invalid_argument("optimize: refresh period must be >= 1");
}

namespace {

bool finite_terms(const LossTerms& t) {
  return std::isfinite(t.census) && std::isfinite(t.smoothness) &&
         std::isfinite(t.non_intersection) && std::isfinite(t.non_blocking) &&
         std::isfinite(t.total);
}

}  // namespace

FlowPairResult optimize_flow_pair(const Image& frame_t, const Image& frame_t1,
                                  const LossConfig& loss_cfg, const OptimizeConfig& opt_cfg,
                                  const std::optional<FlowInit>& init) {
  loss_cfg.validate();
  opt_cfg.validate();
  require_same_size(frame_t, frame_t1, "optimize_flow_pair");
  if (frame_t.height() < 4 || frame_t.width() < 4) {
    throw DimensionError("optimize_flow_pair: images must be at least 4x4");
  }
  if (init) {
    require_same_size(frame_t, init->forward, "optimize_flow_pair init");
    require_same_size(frame_t, init->backward, "optimize_flow_pair init");
  }

  // Level 0 is the input resolution; stop before a level drops below 4x4.
  std::vector<Image> pyr_t{frame_t}, pyr_t1{frame_t1};
  while (static_cast<int>(pyr_t.size()) < opt_cfg.levels) {
    const Image& last = pyr_t.back();
    if ((last.height() + 1) / 2 < 4 || (last.width() + 1) / 2 < 4) break;
    pyr_t.push_back(downsample_image(last));
    pyr_t1.push_back(downsample_image(pyr_t1.back()));
  }
  const int coarsest = static_cast<int>(pyr_t.size()) - 1;

  FlowField forward, backward;
  if (init) {
    forward = init->forward;
    backward = init->backward;
    for (int l = 0; l < coarsest; ++l) {
      forward = downsample_flow(forward);
      backward = downsample_flow(backward);
    }
  } else {
    forward = FlowField(pyr_t[coarsest].height(), pyr_t[coarsest].width());
    backward = forward;
  }

  FlowPairResult result;
  long global_step = 0;
  for (int level = coarsest; level >= 0; --level) {
    const Image& img_t = pyr_t[level];
    const Image& img_t1 = pyr_t1[level];
    if (level != coarsest) {
      forward = upsample_flow(forward, img_t.height(), img_t.width());
      backward = upsample_flow(backward, img_t.height(), img_t.width());
    }
    AdamState state(img_t.height(), img_t.width());
    OcclusionMask occ_t, occ_t1;
    for (int it = 0; it < opt_cfg.iterations; ++it, ++global_step) {
      if (it % opt_cfg.refresh == 0) {
        occ_t = occlusion_mask(forward, backward, loss_cfg.occlusion);
        occ_t1 = occlusion_mask(backward, forward, loss_cfg.occlusion);
      }
      const LossBreakdown b =
          evaluate_objective(img_t, img_t1, forward, backward, occ_t, occ_t1, loss_cfg);
      if (!finite_terms(b.terms) || !b.grad_forward.finite() || !b.grad_backward.finite()) {
        throw OptimizationError("optimize_flow_pair: non-finite loss at step " +
                                    std::to_string(global_step) + " (level " +
                                    std::to_string(level) + ")",
                                global_step);
      }
      result.trace.push_back({level, static_cast<int>(global_step), b.terms});
      adam_step(forward, backward, b.grad_forward, b.grad_backward, state, opt_cfg.adam);
    }
  }

  result.occ_forward = occlusion_mask(forward, backward, loss_cfg.occlusion);
  result.occ_backward = occlusion_mask(backward, forward, loss_cfg.occlusion);
  result.forward = std::move(forward);
  result.backward = std::move(backward);
  return result;
}

}  // namespace geoflow

#ifndef GEOFLOW_OPTIMIZE_HPP
#define GEOFLOW_OPTIMIZE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "geoflow/adam.hpp"
#include "geoflow/objective.hpp"
#include "geoflow/raster.hpp"

namespace geoflow {

struct OptimizeConfig {
  AdamParams adam;
  int iterations = 300;  // per pyramid level
  int levels = 3;
  int refresh = 25;  // occlusion masks are re-estimated every `refresh` steps

  void validate() const;
};

struct TraceEntry {
  int level = 0;  // 0 = finest
  int step = 0;   // global step counter
  LossTerms terms;
};

struct FlowPairResult {
  FlowField forward;
  FlowField backward;
  OcclusionMask occ_forward;
  OcclusionMask occ_backward;
  std::vector<TraceEntry> trace;
};

class OptimizationError : public std::runtime_error {
 public:
  OptimizationError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

struct FlowInit {
  FlowField forward;
  FlowField backward;
};

/// Coarse-to-fine direct minimisation of the objective over both flow fields.
/// Without `init` the coarsest level starts from zero flow; with it, the initial flows
/// are box-downsampled to the coarsest level.
FlowPairResult optimize_flow_pair(const Image& frame_t, const Image& frame_t1,
                                  const LossConfig& loss_cfg, const OptimizeConfig& opt_cfg,
                                  const std::optional<FlowInit>& init = std::nullopt);

}  // namespace geoflow

#endif  // GEOFLOW_OPTIMIZE_HPP

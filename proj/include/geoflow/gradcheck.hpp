#ifndef GEOFLOW_GRADCHECK_HPP
#define GEOFLOW_GRADCHECK_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "geoflow/objective.hpp"
#include "geoflow/raster.hpp"

namespace geoflow {

enum class LossSelector { Census, Smooth, Inter, Block };

std::optional<LossSelector> parse_loss_selector(const std::string& name);
const char* to_string(LossSelector s);

/// Pass threshold on the worst relative error, and the central-difference step, per loss.
double gradcheck_threshold(LossSelector s);
double gradcheck_step(LossSelector s);

struct GradCheckResult {
  double max_rel_error = 0.0;
  int probes = 0;
  int resampled = 0;  // probes rejected because the stencil crossed a branch flip
  // Location of the worst probe.
  int field = 0;  // 0 = forward, 1 = backward
  int component = 0;  // 0 = u, 1 = v
  int row = 0, col = 0;
  double analytic = 0.0, numeric = 0.0;
};

/// Bundle of frames, flows and fixed masks a loss is probed on.
struct GradCheckScene {
  Image frame_t, frame_t1;
  FlowField forward, backward;
  OcclusionMask occ_t, occ_t1;
};

/// Seeded configuration that exercises the selected loss (crossings for Inter,
/// intrusions for Block, textured frames for Census).
GradCheckScene make_gradcheck_scene(LossSelector s, std::uint64_t seed, int size = 12);

/// Unweighted value and flow gradients of one loss, summed over both directions.
struct SelectedLoss {
  double value = 0.0;
  FlowField grad_forward, grad_backward;
};
SelectedLoss evaluate_selected(LossSelector s, const GradCheckScene& scene, const LossConfig& cfg);

/// Compares analytic gradient components against central differences at `probe_count`
/// random components. Probes whose stencil changes a discrete branch (bilinear cell,
/// crossing indicator, membership, nearest side, sign) are resampled. Relative error is
/// |a - n| / max(|a|, |n|, 1e-3 * max|grad|).
GradCheckResult finite_diff_check(LossSelector s, const GradCheckScene& scene,
                                  const LossConfig& cfg, int probe_count, double step,
                                  std::uint64_t seed = 1);

}  // namespace geoflow

#endif  // GEOFLOW_GRADCHECK_HPP

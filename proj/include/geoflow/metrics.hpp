#ifndef GEOFLOW_METRICS_HPP
#define GEOFLOW_METRICS_HPP

#include <optional>
#include <stdexcept>

#include "geoflow/raster.hpp"

namespace geoflow {

/// 1 where ground truth is present.
struct ValidityMask {
  BinaryPlane data;

  static ValidityMask all(int height, int width) {
    return {BinaryPlane::Ones(height, width)};
  }
  int height() const { return static_cast<int>(data.rows()); }
  int width() const { return static_cast<int>(data.cols()); }
};

struct FlowEvalResult {
  double epe_mean = 0.0;      // pixels, over valid pixels
  double epe_mean_noc = 0.0;  // pixels, over valid and non-occluded pixels (NaN if none)
  double error_rate = 0.0;    // percent of valid pixels that are outliers
  long valid_count = 0;
  long noc_count = 0;
};

class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Outlier: endpoint error > 3 px and > 5% of the ground-truth magnitude.
bool is_outlier(double endpoint_error, double gt_magnitude);

/// End-point error statistics. Without `occ` the non-occluded mean equals the full mean.
FlowEvalResult epe(const FlowField& flow, const FlowField& gt, const ValidityMask& valid,
                   const std::optional<OcclusionMask>& occ = std::nullopt);

/// Middlebury colour-wheel rendering. Hue encodes direction, saturation encodes
/// magnitude / max_magnitude; zero flow is white. A non-positive `max_magnitude`
/// selects the 99th-percentile magnitude.
Image flow_to_color(const FlowField& flow, double max_magnitude = 0.0);

}  // namespace geoflow

#endif  // GEOFLOW_METRICS_HPP

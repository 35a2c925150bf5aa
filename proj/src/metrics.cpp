#include "geoflow/metrics.hpp"

#include <cmath>
#include <limits>

namespace geoflow {

bool is_outlier(double endpoint_error, double gt_magnitude) {
  return endpoint_error > 3.0 && endpoint_error > 0.05 * gt_magnitude;
}

FlowEvalResult epe(const FlowField& flow, const FlowField& gt, const ValidityMask& valid,
                   const std::optional<OcclusionMask>& occ) {
  require_same_size(flow, gt, "epe");
  require_same_size(flow, valid, "epe");
  if (occ) require_same_size(flow, *occ, "epe");

  FlowEvalResult res;
  double sum = 0.0, sum_noc = 0.0;
  long outliers = 0;
  for (int r = 0; r < flow.height(); ++r) {
    for (int c = 0; c < flow.width(); ++c) {
      if (!valid.data(r, c)) continue;
      const double err = (flow.at(r, c) - gt.at(r, c)).norm();
      ++res.valid_count;
      sum += err;
      if (is_outlier(err, gt.at(r, c).norm())) ++outliers;
      if (!occ || occ->visible(r, c)) {
        ++res.noc_count;
        sum_noc += err;
      }
    }
  }
  if (res.valid_count == 0) throw MetricError("epe: no valid pixels");
  res.epe_mean = sum / res.valid_count;
  res.epe_mean_noc = res.noc_count > 0 ? sum_noc / res.noc_count
                                       : std::numeric_limits<double>::quiet_NaN();
  res.error_rate = 100.0 * outliers / res.valid_count;
  return res;
}

}  // namespace geoflow

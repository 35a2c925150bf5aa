#ifndef GEOFLOW_SMOOTHNESS_HPP
#define GEOFLOW_SMOOTHNESS_HPP

#include "geoflow/raster.hpp"

namespace geoflow {

struct SmoothnessParams {
  double mu = 150.0;
  int order = 1;  // 1 or 2

  bool valid() const { return mu >= 0.0 && (order == 1 || order == 2); }
};

struct SmoothnessLoss {
  double value = 0.0;
  FlowField grad;
};

/// Edge-aware k-th order smoothness:
///   (1/N) sum_sites sum_{u,v} |forward k-th difference| * exp(-(mu/3) sum_rgb |image difference|)
/// over horizontal and vertical sites with a complete stencil. N counts those sites.
SmoothnessLoss smoothness_loss(const FlowField& flow, const Image& image,
                               const SmoothnessParams& params = {});

}  // namespace geoflow

#endif  // GEOFLOW_SMOOTHNESS_HPP

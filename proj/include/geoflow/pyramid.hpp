#ifndef GEOFLOW_PYRAMID_HPP
#define GEOFLOW_PYRAMID_HPP

#include "geoflow/raster.hpp"

namespace geoflow {

/// 2x2 box average. Odd sizes round up; the missing row/column replicates the edge.
Plane downsample_plane(const Plane& plane);
Image downsample_image(const Image& image);

/// Box-averaged flow at half resolution with values halved.
FlowField downsample_flow(const FlowField& flow);

/// Bilinear upsampling to (height, width) with values doubled.
FlowField upsample_flow(const FlowField& flow, int height, int width);
inline FlowField upsample_flow(const FlowField& flow) {
  return upsample_flow(flow, 2 * flow.height(), 2 * flow.width());
}

}  // namespace geoflow

#endif  // GEOFLOW_PYRAMID_HPP

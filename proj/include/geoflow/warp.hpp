#ifndef GEOFLOW_WARP_HPP
#define GEOFLOW_WARP_HPP

#include <array>

#include "geoflow/raster.hpp"

namespace geoflow {

/// The four integer neighbors of a continuous coordinate and their interpolation weights.
/// Coordinates are clamped to [0, W-1] x [0, H-1] first; `clamped_x` / `clamped_y` record
/// whether that clamp was active (the derivative along that axis is then zero).
struct BilinearWeights {
  int col0 = 0, col1 = 0, row0 = 0, row1 = 0;
  double fx = 0.0, fy = 0.0;
  bool clamped_x = false, clamped_y = false;

  // Order: (row0,col0), (row0,col1), (row1,col0), (row1,col1).
  std::array<double, 4> weights() const {
    return {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
  }
};

BilinearWeights bilinear_weights(double x, double y, int height, int width);

/// Samples one plane at (x, y). Writes d(value)/dx and d(value)/dy when the pointers are set.
double sample_plane(const Plane& plane, double x, double y, double* d_dx = nullptr,
                    double* d_dy = nullptr);

/// Grid plus flow: coordinate (col + u, row + v) for every pixel.
CoordField displace(const FlowField& flow);

Image bilinear_sample(const Image& source, const CoordField& coords);

/// Sampled image together with its exact partials with respect to the target coordinates.
struct SampledImage {
  Image values;
  std::array<Plane, 3> d_dx;
  std::array<Plane, 3> d_dy;
};

SampledImage bilinear_sample_with_grad(const Image& source, const CoordField& coords);

/// Reconstructs frame t by sampling frame t+1 at flow-displaced coordinates.
Image warp(const Image& next_frame, const FlowField& flow);

/// Warps a flow field (each component sampled like an image channel).
FlowField warp_flow(const FlowField& field, const CoordField& coords);

}  // namespace geoflow

#endif  // GEOFLOW_WARP_HPP

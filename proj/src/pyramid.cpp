#include "geoflow/pyramid.hpp"

#include <algorithm>

#include "geoflow/warp.hpp"

namespace geoflow {

Plane downsample_plane(const Plane& plane) {
  const int h = static_cast<int>(plane.rows()), w = static_cast<int>(plane.cols());
  if (h < 2 || w < 2) throw DimensionError("downsample: need at least 2 pixels per axis");
  const int oh = (h + 1) / 2, ow = (w + 1) / 2;
  Plane out(oh, ow);
  for (int r = 0; r < oh; ++r) {
    const int r0 = 2 * r, r1 = std::min(2 * r + 1, h - 1);
    for (int c = 0; c < ow; ++c) {
      const int c0 = 2 * c, c1 = std::min(2 * c + 1, w - 1);
      out(r, c) = 0.25 * (plane(r0, c0) + plane(r0, c1) + plane(r1, c0) + plane(r1, c1));
    }
  }
  return out;
}

Image downsample_image(const Image& image) {
  Image out;
  for (int k = 0; k < 3; ++k) out.channels[k] = downsample_plane(image.channels[k]);
  return out;
}

FlowField downsample_flow(const FlowField& flow) {
  FlowField out;
  out.u = 0.5 * downsample_plane(flow.u);
  out.v = 0.5 * downsample_plane(flow.v);
  return out;
}

FlowField upsample_flow(const FlowField& flow, int height, int width) {
  FlowField out(height, width);
  const double sy = static_cast<double>(flow.height()) / height;
  const double sx = static_cast<double>(flow.width()) / width;
  for (int r = 0; r < height; ++r) {
    const double y = (r + 0.5) * sy - 0.5;
    for (int c = 0; c < width; ++c) {
      const double x = (c + 0.5) * sx - 0.5;
      out.u(r, c) = 2.0 * sample_plane(flow.u, x, y);
      out.v(r, c) = 2.0 * sample_plane(flow.v, x, y);
    }
  }
  return out;
}

}  // namespace geoflow

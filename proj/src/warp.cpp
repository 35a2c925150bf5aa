#include "geoflow/warp.hpp"

#include <algorithm>
#include <cmath>

namespace geoflow {

namespace {

// Splits a clamped coordinate into a cell index and fraction. The last cell is
// [n-2, n-1] so that the upper border still has a one-sided derivative.
void split_axis(double c, int n, int& i0, int& i1, double& frac, bool& clamped) {
  const double hi = static_cast<double>(n - 1);
  clamped = c < 0.0 || c > hi;
  const double cc = std::clamp(c, 0.0, hi);
  if (n == 1) {
    i0 = i1 = 0;
    frac = 0.0;
    return;
  }
  i0 = std::min(static_cast<int>(std::floor(cc)), n - 2);
  i1 = i0 + 1;
  frac = cc - i0;
}

}  // namespace

BilinearWeights bilinear_weights(double x, double y, int height, int width) {
  BilinearWeights w;
  split_axis(x, width, w.col0, w.col1, w.fx, w.clamped_x);
  split_axis(y, height, w.row0, w.row1, w.fy, w.clamped_y);
  return w;
}

double sample_plane(const Plane& plane, double x, double y, double* d_dx, double* d_dy) {
  const auto w = bilinear_weights(x, y, static_cast<int>(plane.rows()), static_cast<int>(plane.cols()));
  const double v00 = plane(w.row0, w.col0);
  const double v01 = plane(w.row0, w.col1);
  const double v10 = plane(w.row1, w.col0);
  const double v11 = plane(w.row1, w.col1);
  const double top = (1 - w.fx) * v00 + w.fx * v01;
  const double bottom = (1 - w.fx) * v10 + w.fx * v11;
  if (d_dx) {
    *d_dx = w.clamped_x || w.col0 == w.col1
                ? 0.0
                : (1 - w.fy) * (v01 - v00) + w.fy * (v11 - v10);
  }
  if (d_dy) *d_dy = w.clamped_y || w.row0 == w.row1 ? 0.0 : bottom - top;
  return (1 - w.fy) * top + w.fy * bottom;
}

CoordField displace(const FlowField& flow) {
  const int h = flow.height(), w = flow.width();
  CoordField out;
  out.x = flow.u;
  out.y = flow.v;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      out.x(r, c) += c;
      out.y(r, c) += r;
    }
  }
  return out;
}

Image bilinear_sample(const Image& source, const CoordField& coords) {
  require_same_size(source, coords, "bilinear_sample");
  Image out(coords.height(), coords.width());
  for (int r = 0; r < coords.height(); ++r) {
    for (int c = 0; c < coords.width(); ++c) {
      for (int k = 0; k < 3; ++k) {
        out.channels[k](r, c) = sample_plane(source.channels[k], coords.x(r, c), coords.y(r, c));
      }
    }
  }
  return out;
}

SampledImage bilinear_sample_with_grad(const Image& source, const CoordField& coords) {
  require_same_size(source, coords, "bilinear_sample");
  const int h = coords.height(), w = coords.width();
  SampledImage out{Image(h, w), {}, {}};
  for (int k = 0; k < 3; ++k) {
    out.d_dx[k] = Plane::Zero(h, w);
    out.d_dy[k] = Plane::Zero(h, w);
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < 3; ++k) {
        out.values.channels[k](r, c) = sample_plane(source.channels[k], coords.x(r, c),
                                                    coords.y(r, c), &out.d_dx[k](r, c),
                                                    &out.d_dy[k](r, c));
      }
    }
  }
  return out;
}

Image warp(const Image& next_frame, const FlowField& flow) {
  require_same_size(next_frame, flow, "warp");
  return bilinear_sample(next_frame, displace(flow));
}

FlowField warp_flow(const FlowField& field, const CoordField& coords) {
  require_same_size(field, coords, "warp_flow");
  FlowField out(coords.height(), coords.width());
  for (int r = 0; r < coords.height(); ++r) {
    for (int c = 0; c < coords.width(); ++c) {
      out.u(r, c) = sample_plane(field.u, coords.x(r, c), coords.y(r, c));
      out.v(r, c) = sample_plane(field.v, coords.x(r, c), coords.y(r, c));
    }
  }
  return out;
}

}  // namespace geoflow

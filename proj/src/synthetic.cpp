#include "geoflow/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "geoflow/warp.hpp"

namespace geoflow::synthetic {

namespace {

// Random lattice with spacing `cell`, bilinearly interpolated to full size.
Plane value_noise(int height, int width, double cell, std::mt19937_64& rng) {
  const int gh = static_cast<int>(std::ceil((height - 1) / cell)) + 2;
  const int gw = static_cast<int>(std::ceil((width - 1) / cell)) + 2;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Plane grid(gh, gw);
  for (int r = 0; r < gh; ++r) {
    for (int c = 0; c < gw; ++c) grid(r, c) = unit(rng);
  }
  Plane out(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) out(r, c) = sample_plane(grid, c / cell, r / cell);
  }
  return out;
}

// Moderate contrast keeps gradients in the range of natural images, where the
// edge-aware smoothness weight is not saturated.
constexpr double kContrast = 0.3;

}  // namespace

Image texture(int height, int width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Image out(height, width);
  for (auto& ch : out.channels) {
    const Plane coarse = value_noise(height, width, 8.0, rng);
    const Plane medium = value_noise(height, width, 4.0, rng);
    ch = 0.5 + kContrast * (0.6 * coarse + 0.4 * medium - 0.5);
  }
  return out;
}

Image shift(const Image& tex, int dx, int dy) {
  const int h = tex.height(), w = tex.width();
  Image out(h, w);
  for (int r = 0; r < h; ++r) {
    const int sr = std::clamp(r - dy, 0, h - 1);
    for (int c = 0; c < w; ++c) out.set(r, c, tex.at(sr, std::clamp(c - dx, 0, w - 1)));
  }
  return out;
}

SquareScene translating_square(int height, int width, int size, int dx, int dy,
                               std::uint64_t seed) {
  SquareScene s;
  s.size = size;
  s.dx = dx;
  s.dy = dy;
  s.top = (height - size - dy) / 2;
  s.left = (width - size - dx) / 2;

  const Image background = texture(height, width, seed);
  const Image object = texture(size, size, seed + 7919);
  s.frame_t = background;
  s.frame_t1 = background;
  s.truth = FlowField(height, width);
  s.eval = OcclusionMask(height, width, 1);
  constexpr int kMargin = 2;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const int rt = s.top + r, ct = s.left + c;
      s.frame_t.set(rt, ct, object.at(r, c));
      s.frame_t1.set(rt + dy, ct + dx, object.at(r, c));
      s.truth.set(rt, ct, Vec2(dx, dy));
      const bool interior =
          r >= kMargin && c >= kMargin && r < size - kMargin && c < size - kMargin;
      if (interior) s.eval.data(rt, ct) = 0;
    }
  }
  return s;
}

FlowField swirl(int height, int width, double magnitude) {
  FlowField out(height, width);
  const double cy = (height - 1) / 2.0, cx = (width - 1) / 2.0;
  const double r0 = std::min(height, width) / 4.0;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double y = r - cy, x = c - cx;
      const double rad = std::hypot(x, y);
      if (rad == 0.0) continue;
      // Vortex profile: speed rises to `magnitude` at r0 then decays.
      const double speed = magnitude * (rad / r0) * std::exp(1.0 - rad / r0);
      out.set(r, c, Vec2(-y / rad * speed, x / rad * speed));
    }
  }
  return out;
}

}  // namespace geoflow::synthetic

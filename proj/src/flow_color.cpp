#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "geoflow/metrics.hpp"

namespace geoflow {

namespace {

// Middlebury colour wheel: red-yellow-green-cyan-blue-magenta segments.
std::vector<Color> make_color_wheel() {
  constexpr int kRY = 15, kYG = 6, kGC = 4, kCB = 11, kBM = 13, kMR = 6;
  std::vector<Color> wheel;
  for (int i = 0; i < kRY; ++i) wheel.emplace_back(1.0, double(i) / kRY, 0.0);
  for (int i = 0; i < kYG; ++i) wheel.emplace_back(1.0 - double(i) / kYG, 1.0, 0.0);
  for (int i = 0; i < kGC; ++i) wheel.emplace_back(0.0, 1.0, double(i) / kGC);
  for (int i = 0; i < kCB; ++i) wheel.emplace_back(0.0, 1.0 - double(i) / kCB, 1.0);
  for (int i = 0; i < kBM; ++i) wheel.emplace_back(double(i) / kBM, 0.0, 1.0);
  for (int i = 0; i < kMR; ++i) wheel.emplace_back(1.0, 0.0, 1.0 - double(i) / kMR);
  return wheel;
}

double percentile_magnitude(const FlowField& flow, double pct) {
  std::vector<double> mags;
  mags.reserve(static_cast<std::size_t>(flow.u.size()));
  for (Eigen::Index i = 0; i < flow.u.size(); ++i) {
    mags.push_back(std::hypot(flow.u.data()[i], flow.v.data()[i]));
  }
  if (mags.empty()) return 0.0;
  const auto k = static_cast<std::size_t>(std::floor(pct * (mags.size() - 1)));
  std::nth_element(mags.begin(), mags.begin() + static_cast<long>(k), mags.end());
  return mags[k];
}

}  // namespace

Image flow_to_color(const FlowField& flow, double max_magnitude) {
  static const std::vector<Color> wheel = make_color_wheel();
  const int ncols = static_cast<int>(wheel.size());
  double scale = max_magnitude > 0 ? max_magnitude : percentile_magnitude(flow, 0.99);
  if (!(scale > 0)) scale = 1.0;

  Image out(flow.height(), flow.width());
  for (int r = 0; r < flow.height(); ++r) {
    for (int c = 0; c < flow.width(); ++c) {
      const double u = flow.u(r, c) / scale, v = flow.v(r, c) / scale;
      const double rad = std::hypot(u, v);
      const double angle = std::atan2(-v, -u) / std::numbers::pi;
      const double fk = (angle + 1.0) / 2.0 * (ncols - 1);
      const int k0 = static_cast<int>(std::floor(fk));
      const int k1 = (k0 + 1) % ncols;
      const double f = fk - k0;
      Color col = (1.0 - f) * wheel[k0] + f * wheel[k1];
      if (rad <= 1.0) {
        col = 1.0 - rad * (1.0 - col);
      } else {
        col *= 0.75;  // out of range
      }
      out.set(r, c, col.max(0.0).min(1.0));
    }
  }
  return out;
}

}  // namespace geoflow

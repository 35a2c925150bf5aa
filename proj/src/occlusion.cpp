#include "geoflow/occlusion.hpp"

#include <stdexcept>

#include "geoflow/warp.hpp"

namespace geoflow {

OcclusionMask occlusion_mask(const FlowField& forward, const FlowField& backward,
                             const OcclusionParams& params) {
  require_same_size(forward, backward, "occlusion_mask");
  if (params.alpha_consistency < 0.0 || params.beta_offset < 0.0) {
    throw std::invalid_argument("occlusion_mask: parameters must be non-negative");
  }
  const int h = forward.height(), w = forward.width();
  const CoordField target = displace(forward);
  OcclusionMask mask(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double x = target.x(r, c), y = target.y(r, c);
      if (x < 0.0 || x > w - 1 || y < 0.0 || y > h - 1) {
        mask.data(r, c) = 1;
        continue;
      }
      const Vec2 f = forward.at(r, c);
      const Vec2 b(sample_plane(backward.u, x, y), sample_plane(backward.v, x, y));
      const double lhs = (f + b).squaredNorm();
      const double rhs =
          params.alpha_consistency * (f.squaredNorm() + b.squaredNorm()) + params.beta_offset;
      mask.data(r, c) = lhs > rhs ? 1 : 0;
    }
  }
  return mask;
}

}  // namespace geoflow

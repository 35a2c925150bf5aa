#ifndef GEOFLOW_SYNTHETIC_HPP
#define GEOFLOW_SYNTHETIC_HPP

#include <cstdint>

#include "geoflow/raster.hpp"

namespace geoflow::synthetic {

/// Colour texture in [0.35, 0.65] mixing two scales of value noise (8 and 4 px) so that
/// every pyramid level keeps structure. Deterministic in `seed`.
Image texture(int height, int width, std::uint64_t seed);

/// Samples `tex` shifted by integer (dx, dy): out(r, c) = tex(r - dy, c - dx), edges clamped.
Image shift(const Image& tex, int dx, int dy);

struct SquareScene {
  Image frame_t;
  Image frame_t1;
  FlowField truth;        // forward ground truth
  OcclusionMask eval;     // 0 on the square interior used for scoring, 1 elsewhere
  int top = 0, left = 0, size = 0;
  int dx = 0, dy = 0;
};

/// Textured square of side `size` moving by (dx, dy) over a static textured background.
SquareScene translating_square(int height, int width, int size, int dx, int dy,
                               std::uint64_t seed);

/// Rotational flow field around the image centre with the given peak magnitude.
FlowField swirl(int height, int width, double magnitude);

}  // namespace geoflow::synthetic

#endif  // GEOFLOW_SYNTHETIC_HPP

#include "geoflow/non_blocking.hpp"

#include <cmath>
#include <stdexcept>

namespace geoflow {

namespace {

void require_min_size(int h, int w, const char* what) {
  if (h < 4 || w < 4) {
    throw DimensionError(std::string(what) + ": image must be at least 4x4");
  }
}

Vec2 mapped(const FlowField& flow, int row, int col) {
  return Vec2(col + flow.u(row, col), row + flow.v(row, col));
}

// Visits every blocked peripheral of a unit. `fn(ring_index, quad_points, point)`.
template <class Fn>
void for_each_blocked(const BlockUnit& unit, const FlowField& flow, const OcclusionMask& occ,
                      Fn&& fn) {
  std::array<Vec2, 4> quad;
  for (int k = 0; k < 4; ++k) {
    const auto& o = BlockUnit::kQuad[k];
    if (occ.occluded(unit.row + o.dr, unit.col + o.dc)) return;
    quad[k] = mapped(flow, unit.row + o.dr, unit.col + o.dc);
  }
  for (int i = 0; i < 12; ++i) {
    const auto& o = BlockUnit::kRing[i];
    const int r = unit.row + o.dr, c = unit.col + o.dc;
    if (occ.occluded(r, c)) continue;
    const Vec2 p = mapped(flow, r, c);
    if (in_quadrilateral<double>(p, quad[0], quad[1], quad[2], quad[3]).in_quad) fn(i, quad, p);
  }
}

struct NearestSide {
  int side = 0;
  SegmentDistance<double> seg;
};

NearestSide nearest_side(const std::array<Vec2, 4>& quad, const Vec2& p) {
  NearestSide best;
  best.seg = point_segment_distance<double>(p, quad[0], quad[1]);
  for (int s = 1; s < 4; ++s) {
    const auto d = point_segment_distance<double>(p, quad[s], quad[(s + 1) % 4]);
    if (d.distance < best.seg.distance) best = {s, d};
  }
  return best;
}

double penalty(double d) { return std::exp(-1.0 / std::max(d, kMinIntrusionDistance)); }

void accumulate_unit(const BlockUnit& unit, const FlowField& flow, const OcclusionMask& occ,
                     double scale, double& value, FlowField* grad) {
  double sum = 0.0;
  for_each_blocked(unit, flow, occ, [&](int i, const std::array<Vec2, 4>& quad, const Vec2& p) {
    const NearestSide near = nearest_side(quad, p);
    const double d = near.seg.distance;
    sum += penalty(d);
    if (!grad || d <= kMinIntrusionDistance) return;

    const double d_pen = scale / 12.0 * penalty(d) / (d * d);
    const Vec2 s1 = quad[near.side], s2 = quad[(near.side + 1) % 4];
    const Vec2 dir = (p - (s1 + near.seg.t * (s2 - s1))) / d;
    const auto add = [&](const PixelOffset& o, const Vec2& g) {
      grad->u(unit.row + o.dr, unit.col + o.dc) += g.x();
      grad->v(unit.row + o.dr, unit.col + o.dc) += g.y();
    };
    add(BlockUnit::kRing[i], d_pen * dir);
    add(BlockUnit::kQuad[near.side], -d_pen * (1.0 - near.seg.t) * dir);
    add(BlockUnit::kQuad[(near.side + 1) % 4], -d_pen * near.seg.t * dir);
  });
  value += sum / 12.0;
}

}  // namespace

double unit_blocking_loss(const BlockUnit& unit, const FlowField& flow, const OcclusionMask& occ) {
  require_same_size(occ, flow, "unit_blocking_loss");
  if (!unit.inside(flow.height(), flow.width())) {
    throw std::out_of_range("unit_blocking_loss: unit not fully inside the frame");
  }
  double value = 0.0;
  accumulate_unit(unit, flow, occ, 1.0, value, nullptr);
  return value;
}

NonBlockingLoss non_blocking_loss(const FlowField& flow, const OcclusionMask& occ) {
  require_same_size(occ, flow, "non_blocking_loss");
  const int h = flow.height(), w = flow.width();
  require_min_size(h, w, "non_blocking_loss");
  NonBlockingLoss out{0.0, FlowField(h, w)};
  const double scale = 1.0 / (static_cast<double>(h - 3) * (w - 3));
  for (int r = 0; r <= h - 4; ++r) {
    for (int c = 0; c <= w - 4; ++c) {
      accumulate_unit({r, c}, flow, occ, scale, out.value, &out.grad);
    }
  }
  out.value *= scale;
  return out;
}

long blocked_count(const FlowField& flow, const OcclusionMask& occ) {
  require_same_size(occ, flow, "blocked_count");
  require_min_size(flow.height(), flow.width(), "blocked_count");
  long count = 0;
  for (int r = 0; r <= flow.height() - 4; ++r) {
    for (int c = 0; c <= flow.width() - 4; ++c) {
      for_each_blocked(BlockUnit{r, c}, flow, occ, [&](int, const auto&, const auto&) { ++count; });
    }
  }
  return count;
}

}  // namespace geoflow

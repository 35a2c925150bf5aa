#include "geoflow/non_intersection.hpp"

#include <cmath>

namespace geoflow {

namespace {

void require_min_size(int h, int w, const char* what) {
  if (h < 3 || w < 3) {
    throw DimensionError(std::string(what) + ": image must be at least 3x3");
  }
}

Vec2 grid_point(int row, int col) { return {static_cast<double>(col), static_cast<double>(row)}; }

bool pair_active(const IntersectUnit& unit, const PixelOffset& off, const OcclusionMask& occ) {
  return occ.visible(unit.row, unit.col) && occ.visible(unit.row + off.dr, unit.col + off.dc);
}

// Adds the unit's loss to `value` and, when `grad` is set, d(scale * unit loss)/d(flow).
void accumulate_unit(const IntersectUnit& unit, const FlowField& flow, const Image& image,
                     const OcclusionMask& occ, const RobustLossParams& robust, double scale,
                     double& value, FlowField* grad) {
  const Vec2 p_mid = grid_point(unit.row, unit.col);
  const Vec2 d_mid = flow.at(unit.row, unit.col);
  const Color c_mid = image.at(unit.row, unit.col);
  double sum = 0.0;
  for (const auto& off : IntersectUnit::kNeighbors) {
    if (!pair_active(unit, off, occ)) continue;
    const int nr = unit.row + off.dr, nc = unit.col + off.dc;
    const Vec2 p_i = grid_point(nr, nc);
    const Vec2 d_i = flow.at(nr, nc);
    const auto coeffs = intersection_coeffs<double>(p_mid, d_mid, p_i, d_i);
    if (!coeffs.intersects()) continue;

    const double w = color_weight(c_mid, image.at(nr, nc));
    const double gap_diff = coeffs.lambda - coeffs.mu;
    const double closeness = std::exp(-gap_diff * gap_diff);
    sum += w * robust_sigma(closeness, robust);
    if (!grad) continue;

    const double d_lambda =
        scale / 8.0 * w * robust_sigma_derivative(closeness, robust) * closeness * (-2.0 * gap_diff);
    const double d_mu = -d_lambda;
    const Vec2 gap = p_i - p_mid;
    const double den = coeffs.denominator;
    // Partials of denominator and numerators w.r.t. (dx_mid, dy_mid, dx_i, dy_i).
    const Eigen::Vector4d d_den(-d_i.y(), d_i.x(), d_mid.y(), -d_mid.x());
    const Eigen::Vector4d d_num_lambda(0.0, 0.0, gap.y(), -gap.x());
    const Eigen::Vector4d d_num_mu(gap.y(), -gap.x(), 0.0, 0.0);
    const Eigen::Vector4d g = d_lambda * (d_num_lambda - coeffs.lambda * d_den) / den +
                              d_mu * (d_num_mu - coeffs.mu * d_den) / den;
    grad->u(unit.row, unit.col) += g[0];
    grad->v(unit.row, unit.col) += g[1];
    grad->u(nr, nc) += g[2];
    grad->v(nr, nc) += g[3];
  }
  value += sum / 8.0;
}

}  // namespace

double color_weight(const Color& center, const Color& neighbor) {
  return std::exp(-(neighbor - center).abs().sum() / 3.0);
}

IntersectCoeffs<double> unit_pair_coeffs(const IntersectUnit& unit, int neighbor,
                                         const FlowField& flow) {
  const auto& off = IntersectUnit::kNeighbors.at(neighbor);
  const int nr = unit.row + off.dr, nc = unit.col + off.dc;
  return intersection_coeffs<double>(grid_point(unit.row, unit.col), flow.at(unit.row, unit.col),
                                     grid_point(nr, nc), flow.at(nr, nc));
}

double unit_loss(const IntersectUnit& unit, const FlowField& flow, const Image& image,
                 const OcclusionMask& occ, const RobustLossParams& robust) {
  require_same_size(image, flow, "unit_loss");
  require_same_size(occ, flow, "unit_loss");
  if (!unit.inside(flow.height(), flow.width())) {
    throw std::out_of_range("unit_loss: unit not fully inside the frame");
  }
  double value = 0.0;
  accumulate_unit(unit, flow, image, occ, robust, 1.0, value, nullptr);
  return value;
}

NonIntersectionLoss non_intersection_loss(const Image& image, const FlowField& flow,
                                          const OcclusionMask& occ,
                                          const RobustLossParams& robust) {
  require_same_size(image, flow, "non_intersection_loss");
  require_same_size(occ, flow, "non_intersection_loss");
  const int h = flow.height(), w = flow.width();
  require_min_size(h, w, "non_intersection_loss");

  NonIntersectionLoss out{0.0, FlowField(h, w)};
  const double scale = 1.0 / (static_cast<double>(h - 2) * (w - 2));
  for (int r = 1; r <= h - 2; ++r) {
    for (int c = 1; c <= w - 2; ++c) {
      accumulate_unit({r, c}, flow, image, occ, robust, scale, out.value, &out.grad);
    }
  }
  out.value *= scale;
  return out;
}

long crossing_count(const FlowField& flow, const OcclusionMask& occ) {
  require_same_size(occ, flow, "crossing_count");
  const int h = flow.height(), w = flow.width();
  require_min_size(h, w, "crossing_count");
  long count = 0;
  for (int r = 1; r <= h - 2; ++r) {
    for (int c = 1; c <= w - 2; ++c) {
      const IntersectUnit unit{r, c};
      for (int i = 0; i < 8; ++i) {
        if (pair_active(unit, IntersectUnit::kNeighbors[i], occ) &&
            unit_pair_coeffs(unit, i, flow).intersects()) {
          ++count;
        }
      }
    }
  }
  return count;
}

}  // namespace geoflow

#ifndef GEOFLOW_GEOMETRY_HPP
#define GEOFLOW_GEOMETRY_HPP

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

namespace geoflow {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
Scalar cross2(const Point2<Scalar>& a, const Point2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Crossing coefficients of two displacement segments
///   p_mid + lambda * d_mid  ==  p_i + mu * d_i.
/// `denominator` is -dx_mid * dy_i + dx_i * dy_mid; when its magnitude is at most
/// kParallelTolerance the segments are treated as parallel and never crossing.
template <typename Scalar>
struct IntersectCoeffs {
  Scalar lambda = 0;
  Scalar mu = 0;
  Scalar denominator = 0;
  bool parallel = true;

  /// Strict interior crossing; touching at an endpoint does not count.
  bool intersects() const {
    return !parallel && lambda > 0 && lambda < 1 && mu > 0 && mu < 1;
  }
};

inline constexpr double kParallelTolerance = 1e-12;

template <typename Scalar>
IntersectCoeffs<Scalar> intersection_coeffs(const Point2<Scalar>& p_mid, const Point2<Scalar>& d_mid,
                                            const Point2<Scalar>& p_i, const Point2<Scalar>& d_i) {
  IntersectCoeffs<Scalar> out;
  out.denominator = -d_mid.x() * d_i.y() + d_i.x() * d_mid.y();
  if (std::abs(out.denominator) <= Scalar(kParallelTolerance)) return out;
  const Point2<Scalar> gap = p_i - p_mid;
  out.parallel = false;
  // det[[gap.x, -d_i.x], [gap.y, -d_i.y]] and det[[d_mid.x, gap.x], [d_mid.y, gap.y]]
  out.lambda = (-gap.x() * d_i.y() + d_i.x() * gap.y()) / out.denominator;
  out.mu = (d_mid.x() * gap.y() - gap.x() * d_mid.y()) / out.denominator;
  return out;
}

/// Point-in-triangle by the three edge cross products B->A, A->C, C->B. Both
/// orientations are accepted and boundary points count as inside. For a degenerate
/// (collinear) triangle a collinear point is inside only within the vertices' bounding box.
template <typename Scalar>
bool in_triangle(const Point2<Scalar>& p, const Point2<Scalar>& a, const Point2<Scalar>& b,
                 const Point2<Scalar>& c) {
  const Scalar c1 = cross2<Scalar>(a - b, p - b);
  const Scalar c2 = cross2<Scalar>(c - a, p - a);
  const Scalar c3 = cross2<Scalar>(b - c, p - c);
  const bool non_negative = c1 >= 0 && c2 >= 0 && c3 >= 0;
  const bool non_positive = c1 <= 0 && c2 <= 0 && c3 <= 0;
  if (!(non_negative || non_positive)) return false;
  if (c1 != 0 || c2 != 0 || c3 != 0) return true;
  const Scalar lo_x = std::min({a.x(), b.x(), c.x()}), hi_x = std::max({a.x(), b.x(), c.x()});
  const Scalar lo_y = std::min({a.y(), b.y(), c.y()}), hi_y = std::max({a.y(), b.y(), c.y()});
  return p.x() >= lo_x && p.x() <= hi_x && p.y() >= lo_y && p.y() <= hi_y;
}

struct QuadMembership {
  bool in_abc = false;
  bool in_acd = false;
  bool in_abd = false;
  bool in_bcd = false;
  bool in_quad = false;
};

/// Double-division test: the point must lie in a triangle of the AC split and in a
/// triangle of the BD split. Correct for simple quads, convex or concave.
template <typename Scalar>
QuadMembership in_quadrilateral(const Point2<Scalar>& p, const Point2<Scalar>& a,
                                const Point2<Scalar>& b, const Point2<Scalar>& c,
                                const Point2<Scalar>& d) {
  QuadMembership m;
  m.in_abc = in_triangle<Scalar>(p, a, b, c);
  m.in_acd = in_triangle<Scalar>(p, a, c, d);
  m.in_abd = in_triangle<Scalar>(p, a, b, d);
  m.in_bcd = in_triangle<Scalar>(p, b, c, d);
  m.in_quad = (m.in_abc || m.in_acd) && (m.in_abd || m.in_bcd);
  return m;
}

template <typename Scalar>
struct SegmentDistance {
  Scalar distance = 0;
  Scalar t = 0;  // closest point is s1 + t * (s2 - s1), t in [0, 1]
};

template <typename Scalar>
SegmentDistance<Scalar> point_segment_distance(const Point2<Scalar>& p, const Point2<Scalar>& s1,
                                               const Point2<Scalar>& s2) {
  SegmentDistance<Scalar> out;
  const Point2<Scalar> seg = s2 - s1;
  const Scalar len2 = seg.squaredNorm();
  if (len2 > 0) out.t = std::clamp<Scalar>((p - s1).dot(seg) / len2, 0, 1);
  out.distance = (p - (s1 + out.t * seg)).norm();
  return out;
}

}  // namespace geoflow

#endif  // GEOFLOW_GEOMETRY_HPP

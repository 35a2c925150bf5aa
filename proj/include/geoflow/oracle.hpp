#ifndef GEOFLOW_ORACLE_HPP
#define GEOFLOW_ORACLE_HPP

#include <array>
#include <cstdint>
#include <string>

#include "geoflow/raster.hpp"

// Reference predicates built from first principles, kept independent of the loss code
// so that they can cross-check it.
namespace geoflow::oracle {

/// Sign of the turn a -> b -> c: +1 counter-clockwise, -1 clockwise, 0 collinear.
int orientation(const Vec2& a, const Vec2& b, const Vec2& c);

/// Proper crossing of closed segments [p1, p2] and [q1, q2] (interiors meet at one point).
bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2);

/// Winding number of a closed polygon around p (non-zero means inside).
int winding_number(const Vec2& p, const std::array<Vec2, 4>& poly);

/// Distance from p to the polygon boundary.
double boundary_distance(const Vec2& p, const std::array<Vec2, 4>& poly);

/// True when no two non-adjacent edges meet and no three consecutive vertices are collinear.
bool is_simple(const std::array<Vec2, 4>& quad);
bool is_convex(const std::array<Vec2, 4>& quad);

struct SuiteReport {
  long checked = 0;
  long skipped = 0;  // near-degenerate samples excluded from comparison
  long disagreements = 0;
  long positives = 0;  // oracle said "crossing" / "inside"
  long convex = 0, concave = 0;
  std::string first_failure;

  bool passed() const { return disagreements == 0 && checked > 0; }
};

/// Random segment pairs (positions in [0, 10]^2, displacements in [-5, 5]^2) compared
/// against the crossing coefficients of the non-intersection loss.
SuiteReport intersection_suite(long samples, std::uint64_t seed);

/// Random simple quads (unit square corners jittered in [-2, 2]^2) with `queries` points
/// each, compared against the double-division membership test.
SuiteReport membership_suite(long quads, int queries, std::uint64_t seed);

}  // namespace geoflow::oracle

#endif  // GEOFLOW_ORACLE_HPP

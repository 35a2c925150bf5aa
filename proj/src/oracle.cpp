#include "geoflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "geoflow/geometry.hpp"

namespace geoflow::oracle {

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double det = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
  return (det > 0) - (det < 0);
}

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const int o1 = orientation(p1, p2, q1), o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1), o4 = orientation(q1, q2, p2);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

int winding_number(const Vec2& p, const std::array<Vec2, 4>& poly) {
  int wn = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && orientation(a, b, p) > 0) ++wn;
    } else {
      if (b.y() <= p.y() && orientation(a, b, p) < 0) --wn;
    }
  }
  return wn;
}

double boundary_distance(const Vec2& p, const std::array<Vec2, 4>& poly) {
  double best = INFINITY;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (a + t * ab - p).norm());
  }
  return best;
}

bool is_simple(const std::array<Vec2, 4>& q) {
  for (int i = 0; i < 4; ++i) {
    if (orientation(q[i], q[(i + 1) % 4], q[(i + 2) % 4]) == 0) return false;
  }
  // Opposite edges AB/CD and BC/DA must not meet.
  const auto touch = [](const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    return o1 * o2 <= 0 && o3 * o4 <= 0;
  };
  return !touch(q[0], q[1], q[2], q[3]) && !touch(q[1], q[2], q[3], q[0]);
}

bool is_convex(const std::array<Vec2, 4>& q) {
  int pos = 0, neg = 0;
  for (int i = 0; i < 4; ++i) {
    const int o = orientation(q[i], q[(i + 1) % 4], q[(i + 2) % 4]);
    pos += o > 0;
    neg += o < 0;
  }
  return pos == 4 || neg == 4;
}

SuiteReport intersection_suite(long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, 10.0), disp(-5.0, 5.0);
  SuiteReport rep;
  constexpr double kDegenerate = 1e-9;
  for (long n = 0; n < samples; ++n) {
    const Vec2 p_mid(pos(rng), pos(rng)), d_mid(disp(rng), disp(rng));
    const Vec2 p_i(pos(rng), pos(rng)), d_i(disp(rng), disp(rng));
    const auto co = intersection_coeffs<double>(p_mid, d_mid, p_i, d_i);
    const auto near_edge = [](double t) {
      return std::abs(t) < kDegenerate || std::abs(t - 1.0) < kDegenerate;
    };
    if (std::abs(co.denominator) <= kDegenerate ||
        (!co.parallel && (near_edge(co.lambda) || near_edge(co.mu)))) {
      ++rep.skipped;
      continue;
    }
    const bool expected = segments_cross(p_mid, p_mid + d_mid, p_i, p_i + d_i);
    ++rep.checked;
    rep.positives += expected;
    if (expected != co.intersects()) {
      if (rep.disagreements++ == 0) {
        std::ostringstream os;
        os.precision(17);
        os << "sample " << n << ": p_mid=(" << p_mid.transpose() << ") d_mid=("
           << d_mid.transpose() << ") p_i=(" << p_i.transpose() << ") d_i=(" << d_i.transpose()
           << ") oracle=" << expected;
        rep.first_failure = os.str();
      }
    }
  }
  return rep;
}

SuiteReport membership_suite(long quads, int queries, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-2.0, 2.0);
  const std::array<Vec2, 4> square{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  constexpr double kEdgeClearance = 1e-6;
  SuiteReport rep;
  for (long n = 0; n < quads;) {
    std::array<Vec2, 4> q;
    for (int k = 0; k < 4; ++k) q[k] = square[k] + Vec2(jitter(rng), jitter(rng));
    if (!is_simple(q)) continue;
    ++n;
    (is_convex(q) ? rep.convex : rep.concave)++;

    Vec2 lo = q[0], hi = q[0];
    for (const auto& v : q) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    std::uniform_real_distribution<double> qx(lo.x() - 0.5, hi.x() + 0.5);
    std::uniform_real_distribution<double> qy(lo.y() - 0.5, hi.y() + 0.5);
    for (int k = 0; k < queries; ++k) {
      const Vec2 p(qx(rng), qy(rng));
      if (boundary_distance(p, q) < kEdgeClearance) {
        ++rep.skipped;
        continue;
      }
      const bool expected = winding_number(p, q) != 0;
      const bool got = in_quadrilateral<double>(p, q[0], q[1], q[2], q[3]).in_quad;
      ++rep.checked;
      rep.positives += expected;
      if (expected != got && rep.disagreements++ == 0) {
        std::ostringstream os;
        os.precision(17);
        os << "quad " << n << ": A=(" << q[0].transpose() << ") B=(" << q[1].transpose()
           << ") C=(" << q[2].transpose() << ") D=(" << q[3].transpose() << ") P=("
           << p.transpose() << ") oracle=" << expected;
        rep.first_failure = os.str();
      }
    }
  }
  return rep;
}

}  // namespace geoflow::oracle

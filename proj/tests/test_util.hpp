#pragma once

#include <algorithm>
#include <vector>

#include "rearr/geom.hpp"
#include "rearr/rng.hpp"

namespace rearr::testutil {

inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-12) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-12) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Random strictly convex CCW polygon with 3..8 vertices, roughly `scale` big.
inline Shape random_polygon(Rng& rng, double scale = 0.1) {
  for (;;) {
    const int n = 4 + static_cast<int>(rng.uniform_index(9));
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
      pts.push_back({rng.uniform(-scale, scale), rng.uniform(-scale, scale)});
    }
    std::vector<Vec2> hull = convex_hull(pts);
    if (hull.size() < 3) continue;
    try {
      return Shape::polygon(hull);
    } catch (const std::exception&) {
      continue;  // collinear draw, retry
    }
  }
}

inline Shape random_shape(Rng& rng, double scale = 0.1) {
  if (rng.bernoulli(0.4)) return Shape::disc(rng.uniform(0.3 * scale, scale));
  return random_polygon(rng, scale);
}

inline Pose2 random_pose(Rng& rng, double span = 0.5) {
  return Pose2{rng.uniform(-span, span), rng.uniform(-span, span),
               rng.uniform(-kPi, kPi)};
}

// ---- Independent distance oracle: exhaustive boundary-facet enumeration ----

inline double seg_seg_distance(const Vec2& a1, const Vec2& a2, const Vec2& b1, const Vec2& b2) {
  auto point_seg = [](const Vec2& p, const Vec2& s1, const Vec2& s2) {
    const Vec2 e = s2 - s1;
    const double len2 = norm_sq(e);
    const double t = len2 > 0.0 ? std::clamp(dot(p - s1, e) / len2, 0.0, 1.0) : 0.0;
    return norm(p - (s1 + e * t));
  };
  // Proper crossing check.
  const double d1 = cross(a2 - a1, b1 - a1);
  const double d2 = cross(a2 - a1, b2 - a1);
  const double d3 = cross(b2 - b1, a1 - b1);
  const double d4 = cross(b2 - b1, a2 - b1);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0;
  return std::min(std::min(point_seg(a1, b1, b2), point_seg(a2, b1, b2)),
                  std::min(point_seg(b1, a1, a2), point_seg(b2, a1, a2)));
}

/// Exact gap between two disjoint posed shapes via exhaustive enumeration of
/// boundary facets (all edge pairs; analytic arcs for discs). Independent of
/// rearr::query.
inline double oracle_distance(const Shape& a, const Pose2& pa, const Shape& b, const Pose2& pb) {
  auto world = [](const Shape& s, const Pose2& p) {
    std::vector<Vec2> w;
    for (const Vec2& v : s.vertices()) w.push_back(p.apply(v));
    return w;
  };
  if (a.is_disc() && b.is_disc()) {
    return norm(pb.position() - pa.position()) - a.radius() - b.radius();
  }
  if (a.is_disc() || b.is_disc()) {
    const bool a_disc = a.is_disc();
    const Vec2 c = a_disc ? pa.position() : pb.position();
    const double r = a_disc ? a.radius() : b.radius();
    const std::vector<Vec2> w = world(a_disc ? b : a, a_disc ? pb : pa);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Vec2& s1 = w[i];
      const Vec2& s2 = w[(i + 1) % w.size()];
      const Vec2 e = s2 - s1;
      const double t = std::clamp(dot(c - s1, e) / norm_sq(e), 0.0, 1.0);
      best = std::min(best, norm(c - (s1 + e * t)));
    }
    return best - r;
  }
  const std::vector<Vec2> wa = world(a, pa);
  const std::vector<Vec2> wb = world(b, pb);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    for (std::size_t j = 0; j < wb.size(); ++j) {
      best = std::min(best, seg_seg_distance(wa[i], wa[(i + 1) % wa.size()],
                                             wb[j], wb[(j + 1) % wb.size()]));
    }
  }
  return best;
}

}  // namespace rearr::testutil

#include "rearr/geom.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

namespace rearr {

namespace {

bool circle_contains(const Circle& c, const Vec2& p, double slack) {
  return norm(p - c.center) <= c.radius + slack;
}

Circle circle_from_2(const Vec2& a, const Vec2& b) {
  const Vec2 center = (a + b) * 0.5;
  return {center, norm(a - b) * 0.5};
}

// Circumcircle of three points; falls back to the best 2-point circle when
// the points are (nearly) collinear.
Circle circle_from_3(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 ab = b - a, ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  if (std::abs(d) < 1e-14) {
    Circle best = circle_from_2(a, b);
    for (const Circle& cand : {circle_from_2(a, c), circle_from_2(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = norm_sq(ab), ac2 = norm_sq(ac);
  const Vec2 center{a.x + (ac.y * ab2 - ab.y * ac2) / d,
                    a.y + (ab.x * ac2 - ac.x * ab2) / d};
  return {center, norm(center - a)};
}

}  // namespace

Circle smallest_enclosing_circle(std::span<const Vec2> points) {
  if (points.empty()) {
    throw std::invalid_argument("smallest_enclosing_circle: empty point set");
  }
  constexpr double kSlack = 1e-12;
  // Incremental Welzl-style construction. Deterministic (no shuffle); input
  // sets here are small (shape vertices, test clouds).
  Circle c{points[0], 0.0};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (circle_contains(c, points[i], kSlack)) continue;
    c = {points[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (circle_contains(c, points[j], kSlack)) continue;
      c = circle_from_2(points[i], points[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (circle_contains(c, points[k], kSlack)) continue;
        c = circle_from_3(points[i], points[j], points[k]);
      }
    }
  }
  return c;
}

Shape Shape::disc(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("Shape::disc: radius must be > 0");
  Shape s;
  s.kind_ = Kind::Disc;
  s.radius_ = radius;
  s.centroid_ = {0.0, 0.0};
  s.bounding_ = {{0.0, 0.0}, radius};
  return s;
}

Shape Shape::polygon(std::vector<Vec2> ccw_vertices) {
  const std::size_t n = ccw_vertices.size();
  if (n < 3) throw std::invalid_argument("Shape::polygon: needs >= 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = ccw_vertices[i];
    const Vec2& b = ccw_vertices[(i + 1) % n];
    const Vec2& c = ccw_vertices[(i + 2) % n];
    if (cross(b - a, c - b) <= 1e-12) {
      throw std::invalid_argument(
          "Shape::polygon: vertices must be strictly convex and CCW");
    }
  }
  Shape s;
  s.kind_ = Kind::Polygon;
  s.verts_ = std::move(ccw_vertices);
  // Area centroid.
  double area2 = 0.0;
  Vec2 acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = s.verts_[i];
    const Vec2& q = s.verts_[(i + 1) % n];
    const double w = cross(p, q);
    area2 += w;
    acc += (p + q) * w;
  }
  s.centroid_ = acc / (3.0 * area2);
  s.bounding_ = smallest_enclosing_circle(s.verts_);
  return s;
}

Shape Shape::box(double hx, double hy) {
  return polygon({{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}});
}

Aabb Shape::aabb(const Pose2& pose) const {
  if (kind_ == Kind::Disc) {
    return {{pose.x - radius_, pose.y - radius_}, {pose.x + radius_, pose.y + radius_}};
  }
  Aabb box{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
           {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
  for (const Vec2& v : verts_) {
    const Vec2 w = pose.apply(v);
    box.min.x = std::min(box.min.x, w.x);
    box.min.y = std::min(box.min.y, w.y);
    box.max.x = std::max(box.max.x, w.x);
    box.max.y = std::max(box.max.y, w.y);
  }
  return box;
}

Vec2 Shape::support(const Pose2& pose, const Vec2& dir) const {
  if (kind_ == Kind::Disc) {
    return pose.position() + normalized(dir) * radius_;
  }
  double best = -std::numeric_limits<double>::infinity();
  Vec2 best_pt;
  for (const Vec2& v : verts_) {
    const Vec2 w = pose.apply(v);
    const double d = dot(w, dir);
    if (d > best) {
      best = d;
      best_pt = w;
    }
  }
  return best_pt;
}

namespace {

// Internal canonical result: witnesses on A and B, push-B-out vector when
// overlapping.
struct PairResult {
  bool overlap = false;
  double dist = 0.0;
  Vec2 pa, pb;
  Vec2 mtv;      // applied to B
  Vec2 contact;  // world contact point
};

PairResult disc_disc(const Vec2& ca, double ra, const Vec2& cb, double rb) {
  PairResult r;
  const Vec2 delta = cb - ca;
  const double d = norm(delta);
  const Vec2 u = d > 1e-12 ? delta / d : Vec2{1.0, 0.0};
  const double gap = d - ra - rb;
  r.pa = ca + u * ra;
  r.pb = cb - u * rb;
  r.contact = (r.pa + r.pb) * 0.5;
  if (gap >= 0.0) {
    r.dist = gap;
  } else {
    r.overlap = true;
    r.mtv = u * (-gap);
  }
  return r;
}

// Closest point on a world-space convex polygon boundary to p, plus whether
// p is strictly inside.
struct PolyClosest {
  Vec2 point;
  double dist = 0.0;  // from p to the boundary
  bool inside = false;
  std::size_t edge = 0;  // nearest edge when inside
};

PolyClosest closest_on_polygon(const std::vector<Vec2>& w, const Vec2& p) {
  PolyClosest out;
  const std::size_t n = w.size();
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = w[i];
    const Vec2& b = w[(i + 1) % n];
    const Vec2 e = b - a;
    if (cross(e, p - a) < 0.0) inside = false;
    const double t = std::clamp(dot(p - a, e) / norm_sq(e), 0.0, 1.0);
    const Vec2 proj = a + e * t;
    const double d = norm(p - proj);
    if (d < best) {
      best = d;
      out.point = proj;
      out.edge = i;
    }
  }
  out.dist = best;
  out.inside = inside;
  return out;
}

std::vector<Vec2> world_vertices(const Shape& s, const Pose2& pose) {
  std::vector<Vec2> w;
  w.reserve(s.vertices().size());
  for (const Vec2& v : s.vertices()) w.push_back(pose.apply(v));
  return w;
}

// disc (center c, radius r) versus polygon with world vertices w.
// `disc_is_b` selects whether the push-out applies to the disc or the polygon.
PairResult disc_polygon(const Vec2& c, double r, const std::vector<Vec2>& w, bool disc_is_b) {
  PairResult res;
  const PolyClosest cp = closest_on_polygon(w, c);
  Vec2 on_poly = cp.point;
  Vec2 push_disc_dir;  // direction that moves the disc away from the polygon
  double depth;
  if (!cp.inside) {
    const Vec2 u = cp.dist > 1e-12 ? (on_poly - c) / cp.dist : Vec2{1.0, 0.0};
    const Vec2 on_disc = c + u * r;
    if (cp.dist - r >= 0.0) {
      res.dist = cp.dist - r;
      if (disc_is_b) {
        res.pa = on_poly;
        res.pb = on_disc;
      } else {
        res.pa = on_disc;
        res.pb = on_poly;
      }
      res.contact = (on_poly + on_disc) * 0.5;
      return res;
    }
    depth = r - cp.dist;
    push_disc_dir = -u;
    res.contact = (on_poly + on_disc) * 0.5;
  } else {
    // Disc center inside the polygon: push out across the nearest edge.
    const Vec2& a = w[cp.edge];
    const Vec2& b = w[(cp.edge + 1) % w.size()];
    const Vec2 nrm = normalized(Vec2{(b - a).y, -(b - a).x});  // outward for CCW
    depth = r + cp.dist;
    push_disc_dir = nrm;
    res.contact = on_poly;
  }
  res.overlap = true;
  res.mtv = disc_is_b ? push_disc_dir * depth : -push_disc_dir * depth;
  const Vec2 deepest_on_disc = c - push_disc_dir * r;
  if (disc_is_b) {
    res.pa = on_poly;
    res.pb = deepest_on_disc;
  } else {
    res.pa = deepest_on_disc;
    res.pb = on_poly;
  }
  return res;
}

// ---- GJK distance for polygon-polygon (separated or touching) ----

struct SimplexVertex {
  Vec2 m;  // a - b in Minkowski space
  Vec2 a;
  Vec2 b;
};

Vec2 poly_support(const std::vector<Vec2>& w, const Vec2& dir) {
  double best = -std::numeric_limits<double>::infinity();
  Vec2 pt;
  for (const Vec2& v : w) {
    const double d = dot(v, dir);
    if (d > best) {
      best = d;
      pt = v;
    }
  }
  return pt;
}

// Closest point to the origin on the current simplex; reduces the simplex to
// the supporting feature and yields witness points via barycentric weights.
Vec2 closest_on_simplex(std::vector<SimplexVertex>& s, Vec2& wa, Vec2& wb) {
  if (s.size() == 1) {
    wa = s[0].a;
    wb = s[0].b;
    return s[0].m;
  }
  if (s.size() == 2) {
    const Vec2 d = s[1].m - s[0].m;
    const double len2 = norm_sq(d);
    double t = len2 > 0.0 ? std::clamp(-dot(s[0].m, d) / len2, 0.0, 1.0) : 0.0;
    if (t <= 0.0) {
      s = {s[0]};
      wa = s[0].a;
      wb = s[0].b;
      return s[0].m;
    }
    if (t >= 1.0) {
      s = {s[1]};
      wa = s[0].a;
      wb = s[0].b;
      return s[0].m;
    }
    wa = s[0].a + (s[1].a - s[0].a) * t;
    wb = s[0].b + (s[1].b - s[0].b) * t;
    return s[0].m + d * t;
  }
  // Triangle: check the origin against each edge region, otherwise enclosed.
  const Vec2& A = s[0].m;
  const Vec2& B = s[1].m;
  const Vec2& C = s[2].m;
  const double area = cross(B - A, C - A);
  // Signed barycentric coordinates of the origin.
  const double u = cross(B, C);        // weight of A
  const double v = cross(C, A);        // weight of B
  const double w = cross(A, B);        // weight of C
  if (area != 0.0 && ((area > 0.0 && u >= 0.0 && v >= 0.0 && w >= 0.0) ||
                      (area < 0.0 && u <= 0.0 && v <= 0.0 && w <= 0.0))) {
    // Origin inside: overlap.
    wa = {};
    wb = {};
    return {0.0, 0.0};
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<SimplexVertex> keep;
  Vec2 pt, ba, bb;
  const std::array<std::array<int, 2>, 3> edges{{{0, 1}, {1, 2}, {0, 2}}};
  for (const auto& e : edges) {
    std::vector<SimplexVertex> seg{s[e[0]], s[e[1]]};
    Vec2 ea, eb;
    const Vec2 p = closest_on_simplex(seg, ea, eb);
    const double d = norm_sq(p);
    if (d < best) {
      best = d;
      keep = seg;
      pt = p;
      ba = ea;
      bb = eb;
    }
  }
  s = keep;
  wa = ba;
  wb = bb;
  return pt;
}

struct GjkResult {
  bool overlap = false;
  double dist = 0.0;
  Vec2 pa, pb;
};

GjkResult gjk_distance(const std::vector<Vec2>& wa, const std::vector<Vec2>& wb) {
  GjkResult out;
  std::vector<SimplexVertex> simplex;
  Vec2 dir{1.0, 0.0};
  SimplexVertex first{poly_support(wa, dir) - poly_support(wb, -dir),
                      poly_support(wa, dir), poly_support(wb, -dir)};
  simplex.push_back(first);
  Vec2 v = first.m;
  Vec2 pa = first.a, pb = first.b;
  for (int iter = 0; iter < 64; ++iter) {
    if (norm(v) <= kGeomEps) {
      out.overlap = true;
      return out;
    }
    const Vec2 d = -v;
    SimplexVertex w{poly_support(wa, d) - poly_support(wb, -d),
                    poly_support(wa, d), poly_support(wb, -d)};
    // No progress toward the origin: converged.
    if (norm_sq(v) - dot(v, w.m) <= kGeomEps * norm(v)) break;
    bool dup = false;
    for (const auto& sv : simplex) {
      if (sv.m == w.m) dup = true;
    }
    if (dup) break;
    simplex.push_back(w);
    v = closest_on_simplex(simplex, pa, pb);
    if (simplex.size() == 3) {
      // Triangle case signalled overlap.
      out.overlap = true;
      return out;
    }
  }
  out.dist = norm(v);
  out.pa = pa;
  out.pb = pb;
  if (out.dist <= kGeomEps) out.overlap = true;
  return out;
}

// ---- SAT minimum translation + reference-face clipping (overlap case) ----

struct SatAxis {
  double overlap = std::numeric_limits<double>::infinity();
  Vec2 axis;            // unit, pushes B away from A
  std::size_t edge = 0; // reference edge index on the owning polygon
  bool on_a = true;     // reference face belongs to A
};

void project(const std::vector<Vec2>& w, const Vec2& axis, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -std::numeric_limits<double>::infinity();
  for (const Vec2& p : w) {
    const double d = dot(p, axis);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
}

bool sat_min_axis(const std::vector<Vec2>& wa, const std::vector<Vec2>& wb, SatAxis& best) {
  auto consider = [&](const std::vector<Vec2>& owner, bool owner_is_a) {
    const std::size_t n = owner.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e = owner[(i + 1) % n] - owner[i];
      const Vec2 axis = normalized(Vec2{e.y, -e.x});  // outward for CCW
      double alo, ahi, blo, bhi;
      project(wa, axis, alo, ahi);
      project(wb, axis, blo, bhi);
      if (ahi <= blo || bhi <= alo) {
        best.overlap = -1.0;  // separated
        return false;
      }
      // Push B toward +axis (outward from the owner when owner is A).
      const double push = owner_is_a ? (ahi - blo) : (bhi - alo);
      if (push < best.overlap) {
        best.overlap = push;
        best.axis = owner_is_a ? axis : -axis;
        best.edge = i;
        best.on_a = owner_is_a;
      }
    }
    return true;
  };
  if (!consider(wa, true)) return false;
  if (!consider(wb, false)) return false;
  return true;
}

PairResult poly_poly_overlap(const std::vector<Vec2>& wa, const std::vector<Vec2>& wb,
                             const SatAxis& sat) {
  PairResult res;
  res.overlap = true;
  res.mtv = sat.axis * sat.overlap;

  // Reference face on the owner, incident face on the other polygon: the edge
  // most anti-parallel to the reference normal.
  const std::vector<Vec2>& ref = sat.on_a ? wa : wb;
  const std::vector<Vec2>& inc = sat.on_a ? wb : wa;
  const Vec2 ref_n = sat.on_a ? sat.axis : -sat.axis;  // outward from ref owner
  const std::size_t rn = ref.size();
  const Vec2 r1 = ref[sat.edge];
  const Vec2 r2 = ref[(sat.edge + 1) % rn];
  const Vec2 tangent = normalized(r2 - r1);

  std::size_t inc_edge = 0;
  double most_anti = std::numeric_limits<double>::infinity();
  const std::size_t in = inc.size();
  for (std::size_t i = 0; i < in; ++i) {
    const Vec2 e = inc[(i + 1) % in] - inc[i];
    const Vec2 n = normalized(Vec2{e.y, -e.x});
    const double d = dot(n, ref_n);
    if (d < most_anti) {
      most_anti = d;
      inc_edge = i;
    }
  }
  std::array<Vec2, 2> pts{inc[inc_edge], inc[(inc_edge + 1) % in]};

  // Clip the incident edge to the reference edge's lateral extent.
  auto clip = [&](const Vec2& plane_pt, const Vec2& plane_dir_keep) {
    std::array<Vec2, 2> out = pts;
    const double d0 = dot(pts[0] - plane_pt, plane_dir_keep);
    const double d1 = dot(pts[1] - plane_pt, plane_dir_keep);
    if (d0 < 0.0 && d1 < 0.0) return false;
    if (d0 < 0.0) out[0] = pts[0] + (pts[1] - pts[0]) * (d0 / (d0 - d1));
    if (d1 < 0.0) out[1] = pts[1] + (pts[0] - pts[1]) * (d1 / (d1 - d0));
    pts = out;
    return true;
  };
  bool ok = clip(r1, tangent) && clip(r2, -tangent);

  Vec2 accum{0.0, 0.0};
  int kept = 0;
  if (ok) {
    for (const Vec2& p : pts) {
      if (dot(p - r1, ref_n) <= 1e-12) {  // at or behind the reference face
        accum += p;
        ++kept;
      }
    }
  }
  if (kept > 0) {
    res.contact = accum / static_cast<double>(kept);
  } else {
    // Degenerate clip: fall back to the deepest incident vertex.
    double depth = std::numeric_limits<double>::infinity();
    for (const Vec2& p : inc) {
      const double d = dot(p - r1, ref_n);
      if (d < depth) {
        depth = d;
        res.contact = p;
      }
    }
  }
  res.pa = res.contact;
  res.pb = res.contact;
  return res;
}

}  // namespace

ContactInfo query(const Shape& a, const Pose2& pa, const Shape& b, const Pose2& pb) {
  PairResult r;
  if (a.is_disc() && b.is_disc()) {
    r = disc_disc(pa.position(), a.radius(), pb.position(), b.radius());
  } else if (a.is_disc() && !b.is_disc()) {
    r = disc_polygon(pa.position(), a.radius(), world_vertices(b, pb), /*disc_is_b=*/false);
  } else if (!a.is_disc() && b.is_disc()) {
    r = disc_polygon(pb.position(), b.radius(), world_vertices(a, pa), /*disc_is_b=*/true);
  } else {
    const std::vector<Vec2> wa = world_vertices(a, pa);
    const std::vector<Vec2> wb = world_vertices(b, pb);
    SatAxis sat;
    if (sat_min_axis(wa, wb, sat)) {
      r = poly_poly_overlap(wa, wb, sat);
      if (sat.overlap <= 1e-12) {
        // Grazing contact: report as touching.
        r.overlap = false;
        r.dist = 0.0;
        r.mtv = {0.0, 0.0};
      }
    } else {
      const GjkResult g = gjk_distance(wa, wb);
      r.dist = g.overlap ? 0.0 : g.dist;
      r.pa = g.pa;
      r.pb = g.pb;
      r.contact = (g.pa + g.pb) * 0.5;
    }
  }

  ContactInfo info;
  info.separating = !r.overlap;
  info.distance = r.overlap ? 0.0 : r.dist;
  info.mtv = r.overlap ? r.mtv : Vec2{0.0, 0.0};
  info.closest_a = r.pa;
  info.closest_b = r.pb;
  info.contact_point = r.contact;
  if (!r.overlap) info.contact_point = (r.pa + r.pb) * 0.5;
  return info;
}

Pose2 lerp_pose(const Pose2& from, const Pose2& to, double s) {
  const double dth = angle_diff(to.theta, from.theta);
  return Pose2{from.x + (to.x - from.x) * s, from.y + (to.y - from.y) * s,
               from.theta + dth * s};
}

double swept_clearance(const Shape& shape, const Pose2& from, const Pose2& to,
                       std::span<const PosedShape> others, double ds) {
  if (others.empty()) return 1.0;
  ds = std::clamp(ds, 1e-5, 0.01);
  const int n = static_cast<int>(std::ceil(1.0 / ds));
  auto penetrates = [&](const Pose2& p, bool include_touch) {
    const Aabb box = shape.aabb(p);
    for (const PosedShape& o : others) {
      if (box.gap(o.shape.aabb(o.pose)) > 0.0) continue;
      const ContactInfo ci = query(shape, p, o.shape, o.pose);
      if (!ci.separating) return true;
      if (include_touch && ci.distance <= 0.0) return true;
    }
    return false;
  };
  if (penetrates(from, /*include_touch=*/true)) return 0.0;
  for (int k = 1; k <= n; ++k) {
    const double s = static_cast<double>(k) / n;
    if (penetrates(lerp_pose(from, to, s), /*include_touch=*/false)) {
      return static_cast<double>(k - 1) / n;
    }
  }
  return 1.0;
}

}  // namespace rearr

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace rearr {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Geometric tolerance for closest-point / support iterations (meters).
inline constexpr double kGeomEps = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double norm(const Vec2& v) { return std::sqrt(norm_sq(v)); }
/// Left-hand perpendicular (rotates v by +90 degrees).
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

inline Vec2 normalized(const Vec2& v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : Vec2{1.0, 0.0};
}

/// Normalizes an angle into (-pi, pi]. Values already in range pass
/// through bit-exact, so normalization is idempotent.
inline double wrap_angle(double t) {
  if (t > -kPi && t <= kPi) return t;
  double r = std::fmod(t + kPi, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r - kPi;
}

/// Shortest-arc signed difference a - b, in (-pi, pi].
inline double angle_diff(double a, double b) { return wrap_angle(a - b); }

/// A pose in SE(2). theta is kept normalized to (-pi, pi].
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose2() = default;
  Pose2(double x_, double y_, double theta_) : x(x_), y(y_), theta(wrap_angle(theta_)) {}

  Vec2 position() const { return {x, y}; }

  /// Maps a point from the local frame into the world frame.
  Vec2 apply(const Vec2& local) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {x + c * local.x - s * local.y, y + s * local.x + c * local.y};
  }

  /// Rotates a direction from the local frame into the world frame.
  Vec2 rotate(const Vec2& local) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * local.x - s * local.y, s * local.x + c * local.y};
  }

  bool operator==(const Pose2& o) const {
    return x == o.x && y == o.y && theta == o.theta;
  }
};

struct Aabb {
  Vec2 min;
  Vec2 max;

  bool contains(const Aabb& inner) const {
    return inner.min.x >= min.x && inner.min.y >= min.y &&
           inner.max.x <= max.x && inner.max.y <= max.y;
  }
  /// Lower bound on the distance between shapes bounded by two boxes
  /// (0 when the boxes overlap).
  double gap(const Aabb& o) const {
    const double dx = std::max({0.0, o.min.x - max.x, min.x - o.max.x});
    const double dy = std::max({0.0, o.min.y - max.y, min.y - o.max.y});
    return std::sqrt(dx * dx + dy * dy);
  }
};

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

/// Smallest circle containing all points. Throws std::invalid_argument on an
/// empty input.
Circle smallest_enclosing_circle(std::span<const Vec2> points);

/// A convex planar shape: a disc or a strictly convex CCW polygon.
/// Construction validates the invariants; operations assume them.
class Shape {
 public:
  enum class Kind { Disc, Polygon };

  static Shape disc(double radius);
  static Shape polygon(std::vector<Vec2> ccw_vertices);
  /// Axis-aligned box with half extents (hx, hy), centered at the origin.
  static Shape box(double hx, double hy);

  Kind kind() const { return kind_; }
  bool is_disc() const { return kind_ == Kind::Disc; }
  double radius() const { return radius_; }
  const std::vector<Vec2>& vertices() const { return verts_; }

  /// Local-frame area centroid (origin for a disc).
  Vec2 centroid() const { return centroid_; }
  /// Radius of the smallest circle enclosing the shape, about enclosing_center().
  double bounding_radius() const { return bounding_.radius; }
  Vec2 enclosing_center() const { return bounding_.center; }

  Aabb aabb(const Pose2& pose) const;

  /// Support point in world frame for a world-frame direction.
  Vec2 support(const Pose2& pose, const Vec2& dir) const;

 private:
  Shape() = default;
  Kind kind_ = Kind::Disc;
  double radius_ = 0.0;
  std::vector<Vec2> verts_;
  Vec2 centroid_;
  Circle bounding_;
};

struct PosedShape {
  Shape shape;
  Pose2 pose;
};

/// Result of a proximity query between two posed convex shapes.
///
/// When separating, `distance` is the exact gap and `mtv` is zero. When
/// penetrating, `mtv` is the minimal translation that pushes shape B out of
/// shape A and `distance` is 0. `contact_point` lies on the contact interface
/// (midpoint of the witness points).
struct ContactInfo {
  bool separating = true;
  double distance = 0.0;
  Vec2 mtv;
  Vec2 contact_point;
  Vec2 closest_a;
  Vec2 closest_b;

  /// Gap when separating, minus penetration depth otherwise.
  double signed_distance() const {
    return separating ? distance : -norm(mtv);
  }
};

ContactInfo query(const Shape& a, const Pose2& pa, const Shape& b, const Pose2& pb);

/// Largest interpolation fraction s in [0,1] such that `shape`, swept from
/// `from` to `to` (positions lerped, angle along the shortest arc), stays
/// penetration-free against every entry of `others` at all sampled fractions
/// up to s. Sampling step is `ds` (conservative: the true first contact lies
/// within one step of the returned fraction). Returns 0 when already in
/// contact at `from`.
double swept_clearance(const Shape& shape, const Pose2& from, const Pose2& to,
                       std::span<const PosedShape> others, double ds = 0.01);

/// Pose at fraction s of the straight SE(2) interpolation used by
/// swept_clearance.
Pose2 lerp_pose(const Pose2& from, const Pose2& to, double s);

}  // namespace rearr

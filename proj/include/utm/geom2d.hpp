#pragma once

#include <cmath>
#include <numbers>

namespace utm {

/// Planar vector. Used for positions (m) and velocities (m/s).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 &operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2 &operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2 &operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
constexpr bool is_zero(Vec2 v) { return v.x == 0.0 && v.y == 0.0; }
constexpr bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Unit vector along `v`. Throws DomainError for the zero vector.
Vec2 unit(Vec2 v);

/// Euclidean distance between two points.
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

/// Angle in radians, always normalized to (-pi, pi].
class Angle {
public:
  constexpr Angle() = default;
  explicit Angle(double radians);

  constexpr double radians() const { return value_; }
  friend constexpr bool operator==(Angle, Angle) = default;

private:
  double value_ = 0.0;
};

/// Maps any finite angle onto (-pi, pi], congruent mod 2*pi.
double normalize_angle(double radians);

/// Quadrant-correct polar angle of a non-zero vector. Throws DomainError for (0,0).
Angle angle_of(Vec2 v);

/// Axis-aligned rectangle given by its center and full extents.
struct Rect {
  Vec2 center;
  double width = 0.0;
  double height = 0.0;

  constexpr Vec2 min_corner() const { return {center.x - width / 2, center.y - height / 2}; }
  constexpr Vec2 max_corner() const { return {center.x + width / 2, center.y + height / 2}; }
  constexpr bool contains(Vec2 p) const {
    const Vec2 lo = min_corner(), hi = max_corner();
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  friend constexpr bool operator==(const Rect &, const Rect &) = default;
};

/// Distance from a point to the closed rectangle (0 inside).
double point_rect_distance(Vec2 p, const Rect &r);

/// Distance from a point to the closed segment pq.
double point_segment_distance(Vec2 point, Vec2 p, Vec2 q);

/// Distance between segment pq and the closed rectangle (0 when they touch).
double segment_rect_distance(Vec2 p, Vec2 q, const Rect &r);

/// True iff segment pq comes within `inflation` of the closed rectangle,
/// i.e. it touches the rectangle grown by a disc of that radius.
bool segment_intersects_rect(Vec2 p, Vec2 q, const Rect &r, double inflation);

}  // namespace utm

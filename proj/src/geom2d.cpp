#include "utm/geom2d.hpp"

#include <algorithm>
#include <array>

#include "utm/errors.hpp"

namespace utm {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

Vec2 unit(Vec2 v) {
  const double n = norm(v);
  if (n == 0.0) throw DomainError("unit: zero vector has no direction");
  return {v.x / n, v.y / n};
}

double normalize_angle(double radians) {
  double a = std::fmod(radians, kTwoPi);  // (-2pi, 2pi)
  if (a > kPi) {
    a -= kTwoPi;
  } else if (a <= -kPi) {
    a += kTwoPi;
  }
  return a;
}

Angle::Angle(double radians) : value_(normalize_angle(radians)) {}

Angle angle_of(Vec2 v) {
  if (is_zero(v)) throw DomainError("angle_of: zero vector has no direction");
  // atan2 already lands in [-pi, pi]; -pi is folded onto +pi.
  return Angle(std::atan2(v.y, v.x));
}

double point_rect_distance(Vec2 p, const Rect &r) {
  const double dx = std::max(std::abs(p.x - r.center.x) - r.width / 2, 0.0);
  const double dy = std::max(std::abs(p.y - r.center.y) - r.height / 2, 0.0);
  return std::hypot(dx, dy);
}

double point_segment_distance(Vec2 point, Vec2 p, Vec2 q) {
  const Vec2 d = q - p;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(point, p);
  const double t = std::clamp(dot(point - p, d) / len2, 0.0, 1.0);
  return distance(point, p + t * d);
}

namespace {

// Liang-Barsky clip of segment pq against the closed box.
bool segment_touches_box(Vec2 p, Vec2 q, Vec2 lo, Vec2 hi) {
  const Vec2 d = q - p;
  double t0 = 0.0, t1 = 1.0;
  const std::array<double, 4> num = {p.x - lo.x, hi.x - p.x, p.y - lo.y, hi.y - p.y};
  const std::array<double, 4> den = {-d.x, d.x, -d.y, d.y};
  for (std::size_t i = 0; i < 4; ++i) {
    if (den[i] == 0.0) {
      if (num[i] < 0.0) return false;
      continue;
    }
    const double t = num[i] / den[i];
    if (den[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

double segment_rect_distance(Vec2 p, Vec2 q, const Rect &r) {
  const Vec2 lo = r.min_corner(), hi = r.max_corner();
  if (segment_touches_box(p, q, lo, hi)) return 0.0;
  // Disjoint convex sets: the closest pair involves a vertex of one of them.
  double best = std::min(point_rect_distance(p, r), point_rect_distance(q, r));
  for (const Vec2 c : {lo, Vec2{hi.x, lo.y}, hi, Vec2{lo.x, hi.y}}) {
    best = std::min(best, point_segment_distance(c, p, q));
  }
  return best;
}

bool segment_intersects_rect(Vec2 p, Vec2 q, const Rect &r, double inflation) {
  return segment_rect_distance(p, q, r) <= inflation;
}

}  // namespace utm

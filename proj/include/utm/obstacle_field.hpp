#pragma once

#include <span>
#include <vector>

#include "utm/geom2d.hpp"

namespace utm {

/// Axis-aligned static obstacle (a building footprint).
struct RectObstacle {
  int id = 0;
  Vec2 center;
  double width = 0.0;
  double height = 0.0;

  Rect rect() const { return {center, width, height}; }
  friend bool operator==(const RectObstacle &, const RectObstacle &) = default;
};

/// Circle on a rectangle's perimeter, used as a point threat by the avoidance layer.
struct CircleObstacle {
  Vec2 center;
  double radius = 0.0;
  int parent = 0;  // RectObstacle::id
};

/// Replaces the boundary of `r` by overlapping circles of radius `r_obs`.
///
/// One circle sits on every corner; each edge is split into ceil(len / l)
/// equal pieces so neighbouring centers are at most `l` apart. The walk starts
/// at the lower-left corner and runs counter-clockwise.
///
/// Throws ConfigError unless 0 < l < 2 * r_obs and the rectangle has positive extents.
std::vector<CircleObstacle> discretize_rectangle(const RectObstacle &r, double r_obs, double l);

/// Immutable set of rectangles together with their circle approximation.
class ObstacleField {
public:
  ObstacleField() = default;
  ObstacleField(std::vector<RectObstacle> rectangles, double r_obs, double spacing);

  std::span<const RectObstacle> rectangles() const { return rectangles_; }
  std::span<const CircleObstacle> circles() const { return circles_; }

private:
  std::vector<RectObstacle> rectangles_;
  std::vector<CircleObstacle> circles_;
};

}  // namespace utm

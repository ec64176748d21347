#include "utm/obstacle_field.hpp"

#include <array>
#include <cmath>
#include <string>

#include "utm/errors.hpp"

namespace utm {

namespace {

// Pieces an edge is split into; tolerant of l dividing len up to rounding.
int edge_pieces(double len, double l) {
  const double ratio = len / l;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) < 1e-9) return std::max(1, static_cast<int>(rounded));
  return static_cast<int>(std::ceil(ratio));
}

}  // namespace

std::vector<CircleObstacle> discretize_rectangle(const RectObstacle &r, double r_obs, double l) {
  if (!(r.width > 0.0) || !(r.height > 0.0)) {
    throw ConfigError("rectangle " + std::to_string(r.id) + " must have positive width and height");
  }
  if (!(r_obs > 0.0)) throw ConfigError("circle radius R_obs must be positive");
  if (!(l > 0.0)) throw ConfigError("circle spacing L must be positive");
  if (l >= 2.0 * r_obs) {
    throw ConfigError("circle spacing L must be below 2*R_obs or the boundary has gaps");
  }

  const Rect box = r.rect();
  const Vec2 lo = box.min_corner(), hi = box.max_corner();
  const std::array<Vec2, 4> corners = {lo, Vec2{hi.x, lo.y}, hi, Vec2{lo.x, hi.y}};

  std::vector<CircleObstacle> out;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const Vec2 a = corners[i];
    const Vec2 b = corners[(i + 1) % corners.size()];
    const int pieces = edge_pieces(distance(a, b), l);
    const Vec2 step = (1.0 / pieces) * (b - a);
    for (int k = 0; k < pieces; ++k) {
      out.push_back({a + static_cast<double>(k) * step, r_obs, r.id});
    }
  }
  return out;
}

ObstacleField::ObstacleField(std::vector<RectObstacle> rectangles, double r_obs, double spacing)
    : rectangles_(std::move(rectangles)) {
  for (const auto &r : rectangles_) {
    auto circles = discretize_rectangle(r, r_obs, spacing);
    circles_.insert(circles_.end(), circles.begin(), circles.end());
  }
}

}  // namespace utm

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "utm/errors.hpp"
#include "utm/obstacle_field.hpp"

using namespace utm;

namespace {

// Point at arc length s along the perimeter, walking counter-clockwise from
// the lower-left corner.
Vec2 perimeter_point(const Rect &r, double s) {
  const Vec2 lo = r.min_corner();
  const double w = r.width, h = r.height;
  if (s <= w) return {lo.x + s, lo.y};
  s -= w;
  if (s <= h) return {lo.x + w, lo.y + s};
  s -= h;
  if (s <= w) return {lo.x + w - s, lo.y + h};
  s -= w;
  return {lo.x, lo.y + h - s};
}

double nearest_center(const std::vector<CircleObstacle> &circles, Vec2 p) {
  double best = INFINITY;
  for (const auto &c : circles) best = std::min(best, distance(c.center, p));
  return best;
}

bool on_perimeter(const Rect &r, Vec2 p) {
  const Vec2 lo = r.min_corner(), hi = r.max_corner();
  const double tol = 1e-9;
  const bool inside = p.x >= lo.x - tol && p.x <= hi.x + tol && p.y >= lo.y - tol && p.y <= hi.y + tol;
  const bool edge = std::abs(p.x - lo.x) < tol || std::abs(p.x - hi.x) < tol || std::abs(p.y - lo.y) < tol ||
                    std::abs(p.y - hi.y) < tol;
  return inside && edge;
}

// Coverage sampled at `samples` uniform perimeter points, plus structural checks.
void check_discretization(const RectObstacle &rect, double r_obs, double l, int samples, std::mt19937_64 &rng) {
  const auto circles = discretize_rectangle(rect, r_obs, l);
  const Rect r = rect.rect();

  const auto interior = [&](double edge) { return static_cast<int>(std::ceil(edge / l - 1e-9)) - 1; };
  CHECK(circles.size() == static_cast<std::size_t>(4 + 2 * interior(r.width) + 2 * interior(r.height)));

  std::set<std::pair<double, double>> unique;
  for (const auto &c : circles) {
    CHECK(on_perimeter(r, c.center));
    CHECK(c.radius == r_obs);
    CHECK(c.parent == rect.id);
    unique.emplace(c.center.x, c.center.y);
  }
  CHECK(unique.size() == circles.size());

  for (std::size_t i = 0; i < circles.size(); ++i) {
    const auto &a = circles[i].center;
    const auto &b = circles[(i + 1) % circles.size()].center;
    CHECK(distance(a, b) <= l + 1e-9);
  }

  const Vec2 lo = r.min_corner(), hi = r.max_corner();
  for (const Vec2 corner : {lo, Vec2{hi.x, lo.y}, hi, Vec2{lo.x, hi.y}}) {
    CHECK(nearest_center(circles, corner) < 1e-9);
  }

  const double perimeter = 2 * (r.width + r.height);
  std::uniform_real_distribution<double> arc(0.0, perimeter);
  for (int i = 0; i < samples; ++i) {
    const double d = nearest_center(circles, perimeter_point(r, arc(rng)));
    REQUIRE(d <= l / 2 + 1e-9);
    REQUIRE(d <= r_obs);
  }
}

}  // namespace

TEST_CASE("30x15 rectangle gets six circles") {
  std::mt19937_64 rng(1);
  const RectObstacle rect{1, {0, 0}, 30, 15};
  const auto circles = discretize_rectangle(rect, 12, 15);
  CHECK(circles.size() == 6);
  check_discretization(rect, 12, 15, 10'000, rng);
}

TEST_CASE("15x15 square gets only its corners") {
  std::mt19937_64 rng(2);
  const RectObstacle rect{4, {50, 50}, 15, 15};
  const auto circles = discretize_rectangle(rect, 12, 15);
  REQUIRE(circles.size() == 4);
  CHECK(circles[0].center == Vec2{42.5, 42.5});
  CHECK(circles[1].center == Vec2{57.5, 42.5});
  CHECK(circles[2].center == Vec2{57.5, 57.5});
  CHECK(circles[3].center == Vec2{42.5, 57.5});
  check_discretization(rect, 12, 15, 10'000, rng);
}

TEST_CASE("invalid discretization requests") {
  const RectObstacle rect{1, {0, 0}, 30, 15};
  CHECK_THROWS_AS(discretize_rectangle(rect, 12, 30), ConfigError);
  CHECK_THROWS_AS(discretize_rectangle(rect, 12, 24), ConfigError);
  CHECK_THROWS_AS(discretize_rectangle(rect, 12, 0), ConfigError);
  CHECK_THROWS_AS(discretize_rectangle(rect, 0, 15), ConfigError);
  CHECK_THROWS_AS(discretize_rectangle({1, {0, 0}, 0, 15}, 12, 15), ConfigError);
  CHECK_THROWS_AS(discretize_rectangle({1, {0, 0}, 10, -1}, 12, 15), ConfigError);
}

TEST_CASE("random rectangles are covered") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> edge(10.0, 200.0), pos(-200.0, 200.0);
  for (int i = 0; i < 25; ++i) {
    const RectObstacle rect{i, {pos(rng), pos(rng)}, edge(rng), edge(rng)};
    check_discretization(rect, 12, 15, 2'000, rng);
  }
}

TEST_CASE("ObstacleField concatenates rectangles in order") {
  ObstacleField field({{1, {0, 0}, 30, 15}, {2, {100, 100}, 15, 15}}, 12, 15);
  CHECK(field.rectangles().size() == 2);
  REQUIRE(field.circles().size() == 10);
  CHECK(field.circles()[5].parent == 1);
  CHECK(field.circles()[6].parent == 2);
}

#include "utm/rrt_planner.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "utm/errors.hpp"

namespace utm {

void PlannerParams::validate() const {
  if (!(step_size > 0.0)) throw ConfigError("planner step_size must be positive");
  if (!(goal_bias >= 0.0 && goal_bias < 1.0)) throw ConfigError("planner goal_bias must be in [0, 1)");
  if (max_iters <= 0) throw ConfigError("planner max_iters must be positive");
  if (!(goal_radius > 0.0)) throw ConfigError("planner goal_radius must be positive");
  if (!(inflation >= 0.0)) throw ConfigError("planner inflation must be non-negative");
  if (!(bounds.width > 0.0 && bounds.height > 0.0)) throw ConfigError("planner bounds must be non-empty");
}

int RrtTree::add(Vec2 v, int parent_index) {
  assert(parent_index >= -1 && parent_index < static_cast<int>(vertices.size()));
  assert(vertices.empty() == (parent_index == -1));
  vertices.push_back(v);
  parent.push_back(parent_index);
  return static_cast<int>(vertices.size()) - 1;
}

double WaypointPath::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) total += distance(waypoints[i - 1], waypoints[i]);
  return total;
}

Vec2 sample_config(const PlannerParams &params, Vec2 goal, RandomStream &rng) {
  // Both draws happen every call so the stream advances uniformly.
  const double coin = rng.uniform();
  const Vec2 lo = params.bounds.min_corner(), hi = params.bounds.max_corner();
  const Vec2 p{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
  return coin < params.goal_bias ? goal : p;
}

int nearest_vertex(const RrtTree &tree, Vec2 q) {
  assert(!tree.vertices.empty());
  int best = 0;
  double best_d2 = dot(tree.vertices[0] - q, tree.vertices[0] - q);
  for (std::size_t i = 1; i < tree.vertices.size(); ++i) {
    const Vec2 d = tree.vertices[i] - q;
    const double d2 = dot(d, d);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(i);
    }
  }
  return best;
}

Vec2 steer(Vec2 from, Vec2 toward, double step_size) {
  if (from == toward) throw DomainError("steer: source and target coincide");
  const double d = distance(from, toward);
  if (d <= step_size) return toward;
  return from + (step_size / d) * (toward - from);
}

bool segment_is_free(Vec2 p, Vec2 q, std::span<const RectObstacle> obstacles, double inflation) {
  return std::none_of(obstacles.begin(), obstacles.end(), [&](const RectObstacle &r) {
    return segment_intersects_rect(p, q, r.rect(), inflation);
  });
}

namespace {

bool point_is_free(Vec2 p, std::span<const RectObstacle> obstacles, double inflation) {
  return segment_is_free(p, p, obstacles, inflation);
}

#ifndef NDEBUG
bool tree_is_consistent(const RrtTree &tree, std::span<const RectObstacle> obstacles, double inflation) {
  if (tree.vertices.size() != tree.parent.size() || tree.parent.empty() || tree.parent[0] != -1) return false;
  for (std::size_t i = 1; i < tree.parent.size(); ++i) {
    // Parents always precede children, which rules out cycles.
    const int p = tree.parent[i];
    if (p < 0 || p >= static_cast<int>(i)) return false;
    if (!segment_is_free(tree.vertices[p], tree.vertices[i], obstacles, inflation)) return false;
  }
  return true;
}
#endif

WaypointPath extract_branch(const RrtTree &tree, int leaf) {
  WaypointPath path;
  for (int v = leaf; v != -1; v = tree.parent[v]) path.waypoints.push_back(tree.vertices[v]);
  std::reverse(path.waypoints.begin(), path.waypoints.end());
  return path;
}

}  // namespace

bool path_is_valid(const WaypointPath &path, Vec2 start, Vec2 goal,
                   std::span<const RectObstacle> obstacles, const PlannerParams &params) {
  if (path.waypoints.empty() || path.waypoints.front() != start) return false;
  if (distance(path.waypoints.back(), goal) > params.goal_radius) return false;
  for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
    if (!params.bounds.contains(path.waypoints[i])) return false;
    if (i > 0 && !segment_is_free(path.waypoints[i - 1], path.waypoints[i], obstacles, params.inflation)) {
      return false;
    }
  }
  return true;
}

WaypointPath plan_path(Vec2 start, Vec2 goal, std::span<const RectObstacle> obstacles,
                       const PlannerParams &params, std::uint64_t seed) {
  RrtTree tree;
  return plan_path(start, goal, obstacles, params, seed, tree);
}

WaypointPath plan_path(Vec2 start, Vec2 goal, std::span<const RectObstacle> obstacles,
                       const PlannerParams &params, std::uint64_t seed, RrtTree &tree) {
  params.validate();
  if (!params.bounds.contains(start)) throw ConfigError("start lies outside the workspace bounds");
  if (!params.bounds.contains(goal)) throw ConfigError("goal lies outside the workspace bounds");
  if (!point_is_free(start, obstacles, params.inflation)) throw ConfigError("start lies inside an inflated obstacle");
  if (!point_is_free(goal, obstacles, params.inflation)) throw ConfigError("goal lies inside an inflated obstacle");

  tree = RrtTree{};
  tree.rng_seed = seed;
  tree.add(start, -1);
  if (distance(start, goal) <= params.goal_radius) return extract_branch(tree, 0);

  RandomStream rng(seed);
  for (int iter = 0; iter < params.max_iters; ++iter) {
    const Vec2 sample = sample_config(params, goal, rng);
    const int near = nearest_vertex(tree, sample);
    if (tree.vertices[near] == sample) continue;
    const Vec2 fresh = steer(tree.vertices[near], sample, params.step_size);
    if (!segment_is_free(tree.vertices[near], fresh, obstacles, params.inflation)) continue;

    int leaf = tree.add(fresh, near);
    assert(tree_is_consistent(tree, obstacles, params.inflation));

    if (distance(fresh, goal) > params.goal_radius) continue;
    if (fresh != goal) {
      if (!segment_is_free(fresh, goal, obstacles, params.inflation)) continue;
      leaf = tree.add(goal, leaf);
    }
    return extract_branch(tree, leaf);
  }
  throw PlanningError("no path to goal within " + std::to_string(params.max_iters) + " iterations");
}

}  // namespace utm

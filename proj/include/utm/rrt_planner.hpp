#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "utm/geom2d.hpp"
#include "utm/obstacle_field.hpp"

namespace utm {

struct PlannerParams {
  double step_size = 10.0;
  double goal_bias = 0.05;
  int max_iters = 10'000;
  double goal_radius = 10.0;
  double inflation = 12.0;
  Rect bounds{{200.0, 200.0}, 400.0, 400.0};

  /// Throws ConfigError when a field is out of range.
  void validate() const;
  friend bool operator==(const PlannerParams &, const PlannerParams &) = default;
};

/// Seeded random stream. Bits are turned into doubles by hand so the
/// sequence does not depend on the standard library's distributions.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::mt19937_64 engine_;
};

/// Tree grown from vertex 0 (the start); parent[0] == -1.
struct RrtTree {
  std::vector<Vec2> vertices;
  std::vector<int> parent;
  std::uint64_t rng_seed = 0;

  std::size_t size() const { return vertices.size(); }
  int add(Vec2 v, int parent_index);
};

struct WaypointPath {
  std::vector<Vec2> waypoints;

  std::size_t size() const { return waypoints.size(); }
  double length() const;
  friend bool operator==(const WaypointPath &, const WaypointPath &) = default;
};

/// The goal with probability goal_bias, otherwise a uniform point in bounds.
Vec2 sample_config(const PlannerParams &params, Vec2 goal, RandomStream &rng);

/// Index of the vertex closest to q; lowest index wins ties.
int nearest_vertex(const RrtTree &tree, Vec2 q);

/// Moves at most `step_size` from `from` toward `toward`. Throws DomainError if they coincide.
Vec2 steer(Vec2 from, Vec2 toward, double step_size);

/// True iff segment pq stays clear of every rectangle inflated by `inflation`.
bool segment_is_free(Vec2 p, Vec2 q, std::span<const RectObstacle> obstacles, double inflation);

/// Checks the WaypointPath invariants: starts at `start`, ends within
/// goal_radius of `goal`, all waypoints in bounds, every edge clear.
bool path_is_valid(const WaypointPath &path, Vec2 start, Vec2 goal,
                   std::span<const RectObstacle> obstacles, const PlannerParams &params);

/// Grows an RRT from start until a vertex lands within goal_radius of the goal
/// and can see it, then returns the branch start..goal.
///
/// Throws ConfigError when start or goal is in collision or out of bounds,
/// PlanningError when max_iters is exhausted.
WaypointPath plan_path(Vec2 start, Vec2 goal, std::span<const RectObstacle> obstacles,
                       const PlannerParams &params, std::uint64_t seed);

/// Same as plan_path but also hands back the grown tree.
WaypointPath plan_path(Vec2 start, Vec2 goal, std::span<const RectObstacle> obstacles,
                       const PlannerParams &params, std::uint64_t seed, RrtTree &tree);

}  // namespace utm

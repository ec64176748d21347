#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "utm/obstacle_field.hpp"
#include "utm/rrt_planner.hpp"
#include "utm/scenario.hpp"

namespace utm {

struct UavState {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
  double radius = 12.0;
  WaypointPath path;
  std::size_t waypoint_index = 0;
  bool arrived = false;

  Vec2 waypoint() const { return path.waypoints[waypoint_index]; }
};

enum class EventKind {
  waypoint_advanced,
  empty_feasible_set,
  uav_uav_collision,
  uav_obstacle_collision,
  arrived,
};

const char *to_string(EventKind kind);

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::waypoint_advanced;
  int uav = 0;
  int other = -1;  // second UAV or rectangle id, -1 when unused
  std::string detail;
};

struct Sample {
  double t = 0.0;
  Vec2 position;
  Vec2 velocity;
};

/// Output of a run. UAVs are listed in ascending id order; every trajectory
/// holds steps + 1 samples at t = k * dt.
struct SimResult {
  std::vector<int> uav_ids;
  std::vector<std::vector<Sample>> trajectories;
  std::vector<Event> events;
  bool completed = false;
  int steps = 0;
  double dt = 0.1;
};

/// Step parameters resolved for the active algorithm.
struct StepSettings {
  Algorithm algorithm = Algorithm::vo;
  double dt = 0.1;
  double dist_wp = 10.0;
  double dist_uav = 50.0;
  double dist_obs = 20.0;
  VoParams vo;
  ApfParams apf;

  static StepSettings from(const Config &config);
};

/// Advances to the next waypoint when closer than dist_wp; at the last one marks arrival.
UavState assign_waypoint(UavState state, double dist_wp);

/// Collision contacts present in a snapshot: UAV discs overlapping, or a UAV
/// center closer than its radius to a true rectangle.
std::vector<Event> detect_collisions(std::span<const UavState> uavs, const ObstacleField &field, double t);

/// What each UAV broadcasts as its velocity this step (see BroadcastVelocity).
/// Arrived UAVs broadcast zero.
std::vector<Vec2> broadcast_velocities(std::span<const UavState> uavs, const StepSettings &settings);

/// Other UAVs and obstacle circles within activation range of `uavs[self]`, in
/// processing order. `velocities` holds one broadcast velocity per UAV.
std::vector<Threat> gather_threats(std::span<const UavState> uavs, std::span<const Vec2> velocities,
                                   std::size_t self, const ObstacleField &field, const StepSettings &settings);

struct StepOutcome {
  std::vector<UavState> uavs;
  std::vector<Event> events;
};

/// One synchronous step. All decisions read the step-start snapshot; positions
/// commit together. `t_next` stamps the events.
StepOutcome step(std::span<const UavState> snapshot, const ObstacleField &field, const StepSettings &settings,
                 double t_next);

/// Planner seed for one UAV, independent of the other UAVs in the scenario.
std::uint64_t uav_seed(std::uint64_t run_seed, int uav_id);

/// RRT paths for every UAV in scenario order. Throws PlanningError naming the UAV.
std::vector<WaypointPath> plan_all(const Scenario &scenario, std::uint64_t run_seed);

/// Flies the given paths (scenario order) until everyone arrives or max_steps elapse.
SimResult simulate(const Scenario &scenario, std::span<const WaypointPath> paths);

/// plan_all followed by simulate.
SimResult run(const Scenario &scenario, std::uint64_t seed);

}  // namespace utm

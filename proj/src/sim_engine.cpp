#include "utm/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

#include "utm/apf_core.hpp"
#include "utm/errors.hpp"
#include "utm/vo_core.hpp"

namespace utm {

const char *to_string(EventKind kind) {
  switch (kind) {
    case EventKind::waypoint_advanced: return "waypoint_advanced";
    case EventKind::empty_feasible_set: return "empty_feasible_set";
    case EventKind::uav_uav_collision: return "uav_uav_collision";
    case EventKind::uav_obstacle_collision: return "uav_obstacle_collision";
    case EventKind::arrived: return "arrived";
  }
  return "unknown";
}

StepSettings StepSettings::from(const Config &config) {
  StepSettings s;
  s.algorithm = config.sim.algorithm;
  s.vo = config.vo;
  s.apf = config.apf;
  if (s.algorithm == Algorithm::vo) {
    s.dt = config.sim.dt;
    s.dist_wp = config.sim.dist_wp;
    s.dist_uav = config.vo.dist_uav;
    s.dist_obs = config.vo.dist_obs;
  } else {
    s.dt = config.apf.dt;
    s.dist_wp = config.apf.dist_wp;
    s.dist_uav = config.apf.dist_uav;
    s.dist_obs = config.apf.dist_obs;
  }
  return s;
}

UavState assign_waypoint(UavState state, double dist_wp) {
  if (state.arrived || state.path.waypoints.empty()) return state;
  if (distance(state.position, state.waypoint()) >= dist_wp) return state;
  if (state.waypoint_index + 1 < state.path.size()) {
    ++state.waypoint_index;
  } else {
    state.arrived = true;
    state.velocity = {};
  }
  return state;
}

std::vector<Event> detect_collisions(std::span<const UavState> uavs, const ObstacleField &field, double t) {
  std::vector<Event> out;
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    for (std::size_t j = i + 1; j < uavs.size(); ++j) {
      const double d = distance(uavs[i].position, uavs[j].position);
      if (d < uavs[i].radius + uavs[j].radius) {
        const auto [a, b] = std::minmax(uavs[i].id, uavs[j].id);
        out.push_back({t, EventKind::uav_uav_collision, a, b, "separation " + std::to_string(d)});
      }
    }
    for (const RectObstacle &r : field.rectangles()) {
      const double d = point_rect_distance(uavs[i].position, r.rect());
      if (d < uavs[i].radius) {
        out.push_back({t, EventKind::uav_obstacle_collision, uavs[i].id, r.id, "clearance " + std::to_string(d)});
      }
    }
  }
  return out;
}

std::vector<Vec2> broadcast_velocities(std::span<const UavState> uavs, const StepSettings &settings) {
  std::vector<Vec2> out;
  out.reserve(uavs.size());
  for (const UavState &u : uavs) {
    if (u.arrived) {
      out.push_back({});
    } else if (settings.vo.broadcast == BroadcastVelocity::desired) {
      out.push_back(desired_velocity(u.position, u.waypoint(), settings.vo));
    } else {
      out.push_back(u.velocity);
    }
  }
  return out;
}

std::vector<Threat> gather_threats(std::span<const UavState> uavs, std::span<const Vec2> velocities,
                                   std::size_t self, const ObstacleField &field, const StepSettings &settings) {
  const UavState &me = uavs[self];
  std::vector<Threat> threats;
  for (std::size_t j = 0; j < uavs.size(); ++j) {
    if (j == self) continue;
    if (distance(me.position, uavs[j].position) < settings.dist_uav) {
      threats.push_back({uavs[j].position, velocities[j], me.radius + uavs[j].radius, ThreatKind::uav, uavs[j].id});
    }
  }
  const auto circles = field.circles();
  for (std::size_t c = 0; c < circles.size(); ++c) {
    if (distance(me.position, circles[c].center) < settings.dist_obs) {
      threats.push_back({circles[c].center, {}, me.radius + circles[c].radius, ThreatKind::obstacle,
                         static_cast<int>(c)});
    }
  }
  order_threats(me.position, threats);
  return threats;
}

namespace {

using Contact = std::tuple<EventKind, int, int>;

std::set<Contact> contacts_of(const std::vector<Event> &events) {
  std::set<Contact> out;
  for (const Event &e : events) out.emplace(e.kind, e.uav, e.other);
  return out;
}

}  // namespace

StepOutcome step(std::span<const UavState> snapshot, const ObstacleField &field, const StepSettings &settings,
                 double t_next) {
  StepOutcome out;
  out.uavs.assign(snapshot.begin(), snapshot.end());

  for (UavState &u : out.uavs) {
    const UavState before = u;
    u = assign_waypoint(std::move(u), settings.dist_wp);
    if (u.arrived && !before.arrived) {
      out.events.push_back({t_next, EventKind::arrived, u.id, -1, ""});
    } else if (u.waypoint_index != before.waypoint_index) {
      out.events.push_back(
          {t_next, EventKind::waypoint_advanced, u.id, -1, "index " + std::to_string(u.waypoint_index)});
    }
  }

  // Decisions read the post-assignment snapshot; nothing below writes to it.
  const std::vector<UavState> frozen = out.uavs;
  const std::vector<Vec2> velocities = broadcast_velocities(frozen, settings);
  for (std::size_t i = 0; i < frozen.size(); ++i) {
    const UavState &me = frozen[i];
    if (me.arrived) continue;
    const std::vector<Threat> threats = gather_threats(frozen, velocities, i, field, settings);
    if (settings.algorithm == Algorithm::vo) {
      const AvoidResult r = avoid(me.position, me.waypoint(), threats, settings.vo);
      if (r.empty_set) out.events.push_back({t_next, EventKind::empty_feasible_set, me.id, -1, "hovering"});
      out.uavs[i].velocity = r.velocity;
      out.uavs[i].position = me.position + settings.dt * r.velocity;
    } else {
      ApfParams apf = settings.apf;
      apf.dt = settings.dt;
      const ApfStep r = apf_step(me.position, me.waypoint(), threats, apf);
      out.uavs[i].velocity = r.total_force;
      out.uavs[i].position = r.position;
    }
  }

  // Only contacts that were not present at the start of the step become events.
  const std::set<Contact> previous = contacts_of(detect_collisions(snapshot, field, t_next));
  for (Event &e : detect_collisions(out.uavs, field, t_next)) {
    if (!previous.contains({e.kind, e.uav, e.other})) out.events.push_back(std::move(e));
  }
  return out;
}

std::uint64_t uav_seed(std::uint64_t run_seed, int uav_id) {
  // splitmix64 finalizer over the run seed combined with the mixed id.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(run_seed ^ mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(uav_id))));
}

std::vector<WaypointPath> plan_all(const Scenario &scenario, std::uint64_t run_seed) {
  std::vector<WaypointPath> paths;
  paths.reserve(scenario.uavs.size());
  for (const UavSpec &u : scenario.uavs) {
    try {
      paths.push_back(plan_path(u.start, u.goal, scenario.rectangles, scenario.config.planner,
                                uav_seed(run_seed, u.id)));
    } catch (const PlanningError &e) {
      throw PlanningError("UAV " + std::to_string(u.id) + ": " + e.what());
    } catch (const ConfigError &e) {
      throw ConfigError("UAV " + std::to_string(u.id) + ": " + e.what());
    }
  }
  return paths;
}

SimResult simulate(const Scenario &scenario, std::span<const WaypointPath> paths) {
  if (paths.size() != scenario.uavs.size()) throw ConfigError("simulate: one path per UAV is required");
  const ObstacleField field = scenario.obstacle_field();
  const StepSettings settings = StepSettings::from(scenario.config);

  std::vector<UavState> uavs;
  for (std::size_t i = 0; i < scenario.uavs.size(); ++i) {
    const UavSpec &spec = scenario.uavs[i];
    if (paths[i].waypoints.empty()) throw ConfigError("UAV " + std::to_string(spec.id) + " has an empty path");
    uavs.push_back({spec.id, spec.start, {}, spec.radius, paths[i], 0, false});
  }

  // Results are reported in id order regardless of scenario order.
  std::vector<std::size_t> order(uavs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return uavs[a].id < uavs[b].id; });

  SimResult result;
  result.dt = settings.dt;
  result.trajectories.resize(uavs.size());
  for (std::size_t k = 0; k < order.size(); ++k) result.uav_ids.push_back(uavs[order[k]].id);

  auto record = [&](double t) {
    for (std::size_t k = 0; k < order.size(); ++k) {
      const UavState &u = uavs[order[k]];
      result.trajectories[k].push_back({t, u.position, u.velocity});
    }
  };

  record(0.0);
  result.events = detect_collisions(uavs, field, 0.0);
  auto all_arrived = [&] { return std::all_of(uavs.begin(), uavs.end(), [](const UavState &u) { return u.arrived; }); };

  while (!all_arrived() && result.steps < scenario.config.sim.max_steps) {
    const double t_next = (result.steps + 1) * settings.dt;
    StepOutcome next = step(uavs, field, settings, t_next);
    uavs = std::move(next.uavs);
    result.events.insert(result.events.end(), std::make_move_iterator(next.events.begin()),
                         std::make_move_iterator(next.events.end()));
    ++result.steps;
    record(t_next);
  }
  result.completed = all_arrived();

  // Canonical event order: time, then kind, then ids.
  std::stable_sort(result.events.begin(), result.events.end(), [](const Event &a, const Event &b) {
    return std::tie(a.t, a.kind, a.uav, a.other) < std::tie(b.t, b.kind, b.uav, b.other);
  });
  return result;
}

SimResult run(const Scenario &scenario, std::uint64_t seed) {
  const std::vector<WaypointPath> paths = plan_all(scenario, seed);
  return simulate(scenario, paths);
}

}  // namespace utm

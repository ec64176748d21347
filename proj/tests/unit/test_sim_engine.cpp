#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "utm/errors.hpp"
#include "utm/sim_engine.hpp"

using namespace utm;

namespace {

UavState uav(int id, Vec2 pos, std::vector<Vec2> waypoints, std::size_t index = 0) {
  UavState u;
  u.id = id;
  u.position = pos;
  u.path.waypoints = std::move(waypoints);
  u.waypoint_index = index;
  return u;
}

Scenario crossing_scenario() {
  Scenario s;
  s.name = "crossing";
  s.rectangles = {{1, {200, 200}, 60, 60}};
  s.uavs = {{1, {20, 200}, {380, 200}}, {2, {200, 20}, {200, 380}}, {3, {380, 380}, {20, 20}}};
  return s;
}

}  // namespace

TEST_CASE("assign_waypoint") {
  const UavState far = uav(1, {0, 0}, {{15, 0}, {30, 0}});
  CHECK(assign_waypoint(far, 10).waypoint_index == 0);

  const UavState near = uav(1, {10, 0}, {{15, 0}, {30, 0}});
  CHECK(assign_waypoint(near, 10).waypoint_index == 1);
  CHECK_FALSE(assign_waypoint(near, 10).arrived);

  UavState last = uav(1, {27, 0}, {{15, 0}, {30, 0}}, 1);
  last.velocity = {3, 0};
  const UavState done = assign_waypoint(last, 10);
  CHECK(done.arrived);
  CHECK(done.velocity == Vec2{0, 0});
  CHECK(done.waypoint_index == 1);

  CHECK(assign_waypoint(uav(1, {20, 0}, {{30, 0}}), 10).waypoint_index == 0);  // exactly dist_wp: not yet
}

TEST_CASE("detect_collisions") {
  const ObstacleField field({{7, {100, 0}, 20, 20}}, 12, 15);
  SUBCASE("UAV pairs") {
    std::vector<UavState> a{uav(1, {0, 200}, {{0, 0}}), uav(2, {24.1, 200}, {{0, 0}})};
    CHECK(detect_collisions(a, field, 0).empty());
    a[1].position = {23.9, 200};
    const auto ev = detect_collisions(a, field, 1.5);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].kind == EventKind::uav_uav_collision);
    CHECK(ev[0].uav == 1);
    CHECK(ev[0].other == 2);
    CHECK(ev[0].t == 1.5);
  }
  SUBCASE("true rectangle, not circles") {
    std::vector<UavState> a{uav(3, {121, 0}, {{0, 0}})};  // 11 m from the face
    auto ev = detect_collisions(a, field, 0);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].kind == EventKind::uav_obstacle_collision);
    CHECK(ev[0].other == 7);
    a[0].position = {122.5, 0};
    CHECK(detect_collisions(a, field, 0).empty());
  }
}

TEST_CASE("single step arithmetic") {
  const StepSettings s = StepSettings::from(Config{});
  const std::vector<UavState> world{uav(1, {0, 0}, {{100, 0}, {200, 0}})};
  const StepOutcome out = step(world, ObstacleField{}, s, 0.1);
  CHECK(out.uavs[0].velocity == Vec2{20, 0});
  CHECK(out.uavs[0].position.x == doctest::Approx(2.0));
  CHECK(out.uavs[0].position.y == 0.0);
  CHECK(out.events.empty());
}

TEST_CASE("APF step uses the APF settings") {
  Config c;
  c.sim.algorithm = Algorithm::apf;
  const StepSettings s = StepSettings::from(c);
  const std::vector<UavState> world{uav(1, {0, 0}, {{100, 0}, {200, 0}})};
  const StepOutcome out = step(world, ObstacleField{}, s, 0.1);
  CHECK(out.uavs[0].velocity == Vec2{8, 0});
  CHECK(out.uavs[0].position.x == doctest::Approx(0.8));
}

TEST_CASE("all arrived is a fixed point") {
  const StepSettings s = StepSettings::from(Config{});
  std::vector<UavState> world{uav(1, {0, 0}, {{0, 0}}), uav(2, {50, 50}, {{50, 50}})};
  for (auto &u : world) u.arrived = true;
  const StepOutcome out = step(world, ObstacleField{}, s, 0.1);
  for (std::size_t i = 0; i < world.size(); ++i) {
    CHECK(out.uavs[i].position == world[i].position);
    CHECK(out.uavs[i].velocity == Vec2{0, 0});
    CHECK(out.uavs[i].arrived);
  }
  CHECK(out.events.empty());
}

TEST_CASE("head-on step leaves each UAV outside the cone of the velocity it saw") {
  const StepSettings s = StepSettings::from(Config{});
  std::vector<UavState> world{uav(1, {0, 200}, {{0, 200}, {400, 200}}, 1),
                              uav(2, {400, 200}, {{400, 200}, {0, 200}}, 1)};
  int checked = 0;
  for (int k = 0; k < 3000 && !(world[0].arrived && world[1].arrived); ++k) {
    const StepOutcome out = step(world, ObstacleField{}, s, 0.1 * (k + 1));
    for (int i = 0; i < 2; ++i) {
      const int j = 1 - i;
      if (distance(world[i].position, world[j].position) >= s.dist_uav || out.uavs[i].arrived) continue;
      const CollisionCone cone = collision_cone(world[i].position, world[j].position, 12, 12);
      CHECK_FALSE(in_cone(out.uavs[i].velocity - world[j].velocity, cone));
      ++checked;
    }
    world = out.uavs;
  }
  CHECK(checked > 0);
}

TEST_CASE("gather_threats") {
  Config c;
  const StepSettings s = StepSettings::from(c);
  const ObstacleField field({{1, {100, 0}, 30, 30}}, 12, 15);
  std::vector<UavState> world{uav(1, {70, 0}, {{0, 0}}), uav(2, {70, 49}, {{0, 0}}), uav(3, {70, 50}, {{0, 0}}),
                              uav(4, {30, 0}, {{0, 0}})};
  world[3].arrived = true;
  world[1].velocity = {1, 2};
  const auto velocities = broadcast_velocities(world, s);
  CHECK(velocities[3] == Vec2{0, 0});

  const auto threats = gather_threats(world, velocities, 0, field, s);
  int uavs = 0, circles = 0;
  for (const Threat &t : threats) {
    if (t.kind == ThreatKind::uav) {
      ++uavs;
      CHECK(t.id != 3);  // exactly 50 m away: outside the strict range
      CHECK(t.combined_radius == 24.0);
      if (t.id == 2) CHECK(t.velocity == Vec2{1, 2});
    } else {
      ++circles;
      CHECK(distance(t.position, world[0].position) < 20.0);
      CHECK(t.velocity == Vec2{0, 0});
    }
  }
  CHECK(uavs == 2);  // UAV 2 and the arrived UAV 4
  CHECK(circles > 0);
  for (std::size_t i = 1; i < threats.size(); ++i) {
    CHECK(distance(threats[i - 1].position, world[0].position) <= distance(threats[i].position, world[0].position));
  }
}

TEST_CASE("broadcast velocity choice") {
  Config c;
  c.vo.broadcast = BroadcastVelocity::desired;
  std::vector<UavState> world{uav(1, {0, 0}, {{10, 0}})};
  world[0].velocity = {-3, 0};
  CHECK(broadcast_velocities(world, StepSettings::from(c))[0] == Vec2{2, 0});
  c.vo.broadcast = BroadcastVelocity::commanded;
  CHECK(broadcast_velocities(world, StepSettings::from(c))[0] == Vec2{-3, 0});
}

TEST_CASE("collision events fire on onset only") {
  Scenario s;
  s.uavs = {{1, {100, 200}, {300, 200}}, {2, {120, 200}, {300, 210}}};  // overlapping from the start
  s.config.sim.max_steps = 5;
  const std::vector<WaypointPath> paths{{{{100, 200}, {300, 200}}}, {{{120, 200}, {300, 210}}}};
  const SimResult r = simulate(s, paths);
  const auto n = std::count_if(r.events.begin(), r.events.end(),
                               [](const Event &e) { return e.kind == EventKind::uav_uav_collision; });
  CHECK(n == 1);
  CHECK(r.events.front().t == 0.0);
}

TEST_CASE("single UAV run") {
  Scenario s;
  s.uavs = {{1, {20, 20}, {380, 20}}};
  const SimResult r = run(s, 5);
  CHECK(r.completed);
  REQUIRE(r.trajectories.size() == 1);
  CHECK(r.trajectories[0].size() == static_cast<std::size_t>(r.steps) + 1);
  CHECK(r.trajectories[0].back().t == doctest::Approx(r.steps * r.dt));
  CHECK(distance(r.trajectories[0].back().position, {380, 20}) < s.config.sim.dist_wp);
  CHECK(std::any_of(r.events.begin(), r.events.end(), [](const Event &e) { return e.kind == EventKind::arrived; }));
}

TEST_CASE("a lone UAV stays out of the inflated rectangles") {
  Scenario s = crossing_scenario();
  s.uavs.resize(1);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SimResult r = run(s, seed);
    CHECK(r.completed);
    for (std::size_t k = 1; k < r.trajectories[0].size(); ++k) {
      const Sample &a = r.trajectories[0][k - 1];
      const Sample &b = r.trajectories[0][k];
      const double margin = r.dt * norm(b.velocity);
      CHECK(point_rect_distance(b.position, s.rectangles[0].rect()) > s.config.planner.inflation - margin - 1e-9);
      (void)a;
    }
  }
}

TEST_CASE("step limit ends the run without an error") {
  Scenario s = crossing_scenario();
  s.config.sim.max_steps = 10;
  const SimResult r = run(s, 1);
  CHECK_FALSE(r.completed);
  CHECK(r.steps == 10);
  for (const auto &t : r.trajectories) CHECK(t.size() == 11);
}

TEST_CASE("determinism and id permutation") {
  const Scenario s = crossing_scenario();
  const SimResult a = run(s, 9);
  const SimResult b = run(s, 9);
  REQUIRE(a.steps == b.steps);
  for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
    for (std::size_t k = 0; k < a.trajectories[i].size(); ++k) {
      CHECK(a.trajectories[i][k].position == b.trajectories[i][k].position);
    }
  }

  Scenario permuted = s;
  std::reverse(permuted.uavs.begin(), permuted.uavs.end());
  const SimResult c = run(permuted, 9);
  CHECK(c.uav_ids == a.uav_ids);
  REQUIRE(c.steps == a.steps);
  for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
    for (std::size_t k = 0; k < a.trajectories[i].size(); ++k) {
      REQUIRE(c.trajectories[i][k].position == a.trajectories[i][k].position);
    }
  }
}

TEST_CASE("per-UAV planner seeds") {
  Scenario s = crossing_scenario();
  const auto before = plan_all(s, 4);
  s.uavs.push_back({9, {20, 380}, {380, 300}});
  const auto after = plan_all(s, 4);
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] == before[i]);
  CHECK(uav_seed(4, 1) != uav_seed(4, 2));
  CHECK(uav_seed(4, 1) != uav_seed(5, 1));
}

TEST_CASE("planning failure names the UAV") {
  Scenario s;
  s.rectangles = {{1, {200, 250}, 120, 20}, {2, {200, 150}, 120, 20}, {3, {150, 200}, 20, 120}, {4, {250, 200}, 20, 120}};
  s.uavs = {{1, {20, 20}, {380, 20}}, {5, {20, 380}, {200, 200}}};
  s.config.planner.max_iters = 1'000;
  try {
    plan_all(s, 1);
    FAIL("expected a planning failure");
  } catch (const PlanningError &e) {
    CHECK(std::string(e.what()).find("UAV 5") != std::string::npos);
  }
}

#include "utm/vo_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "utm/errors.hpp"

namespace utm {

void VoParams::validate() const {
  if (!(theta_step > 0.0)) throw ConfigError("vo theta_step must be positive");
  if (!(mag_step > 0.0)) throw ConfigError("vo mag_step must be positive");
  if (!(dist_uav > 0.0)) throw ConfigError("vo dist_uav must be positive");
  if (!(dist_obs > 0.0)) throw ConfigError("vo dist_obs must be positive");
  if (!(kp > 0.0)) throw ConfigError("vo kp must be positive");
  if (!(max_speed >= 0.0)) throw ConfigError("vo max_speed must be non-negative (0 disables the cap)");
}

CollisionCone collision_cone(Vec2 p_a, Vec2 p_b, double r_a, double r_b) {
  if (p_a == p_b) throw DomainError("collision_cone: positions coincide");
  CollisionCone cone;
  const double d_ab = distance(p_a, p_b);
  const double combined = r_a + r_b;
  cone.center_angle = angle_of(p_b - p_a);
  if (d_ab <= combined) {
    // arcsin argument >= 1: block the whole half-plane facing B.
    cone.half_angle = std::numbers::pi / 2;
    cone.already_violating = true;
  } else {
    cone.half_angle = std::asin(combined / d_ab);
  }
  cone.c_left = Angle(cone.center_angle.radians() + cone.half_angle);
  cone.c_right = Angle(cone.center_angle.radians() - cone.half_angle);
  return cone;
}

bool in_cone(Vec2 v_rel, const CollisionCone &cone) {
  if (is_zero(v_rel)) return false;
  const double off = normalize_angle(angle_of(v_rel).radians() - cone.center_angle.radians());
  return std::abs(off) < cone.half_angle;
}

std::vector<Candidate> relative_velocity_grid(double speed, const VoParams &params) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  // Slack so a speed that is a multiple of mag_step keeps its last grid point.
  const double slack = 1e-9 * std::max(1.0, speed);

  std::vector<double> magnitudes;
  for (int j = 0;; ++j) {
    const double m = j * params.mag_step;
    if (m > speed + slack) break;
    magnitudes.push_back(m);
  }
  if (speed - magnitudes.back() > slack) magnitudes.push_back(speed);

  std::vector<Candidate> grid;
  for (int k = 0;; ++k) {
    const double theta = k * params.theta_step;
    if (theta >= kTwoPi) break;
    const double c = std::cos(theta), s = std::sin(theta);
    for (const double m : magnitudes) grid.push_back({{m * c, m * s}, theta, m});
  }
  return grid;
}

FeasibleSet search_feasible(Vec2 v_ab, Vec2 v_b, const CollisionCone &cone, const VoParams &params) {
  FeasibleSet set;
  for (const Candidate &rel : relative_velocity_grid(norm(v_ab), params)) {
    if (in_cone(rel.velocity, cone)) continue;
    set.candidates.push_back({rel.velocity + v_b, rel.theta, rel.magnitude});
  }
  return set;
}

FeasibleSet prune_feasible(FeasibleSet set, Vec2 v_b_other, const CollisionCone &cone_other) {
  std::erase_if(set.candidates,
                [&](const Candidate &c) { return in_cone(c.velocity - v_b_other, cone_other); });
  return set;
}

Selection select_velocity(const FeasibleSet &set, Vec2 v_a_orig) {
  if (set.empty()) return {{0.0, 0.0}, true};
  const Candidate *best = nullptr;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const Candidate &c : set.candidates) {
    const Vec2 d = c.velocity - v_a_orig;
    const double d2 = dot(d, d);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = &c;
    }
  }
  return {best->velocity, false};
}

void order_threats(Vec2 self_position, std::vector<Threat> &threats) {
  std::stable_sort(threats.begin(), threats.end(), [&](const Threat &a, const Threat &b) {
    const double da = distance(self_position, a.position);
    const double db = distance(self_position, b.position);
    if (da != db) return da < db;
    if (a.kind != b.kind) return a.kind == ThreatKind::uav;
    return a.id < b.id;
  });
}

Vec2 desired_velocity(Vec2 position, Vec2 waypoint, const VoParams &params) {
  const Vec2 v = params.kp * (waypoint - position);
  if (params.max_speed > 0.0 && norm(v) > params.max_speed) return params.max_speed * unit(v);
  return v;
}

AvoidResult avoid(Vec2 position, Vec2 waypoint, std::span<const Threat> threats, const VoParams &params) {
  AvoidResult out;
  const Vec2 v_a = desired_velocity(position, waypoint, params);
  out.desired = v_a;

  std::vector<CollisionCone> cones;
  cones.reserve(threats.size());
  std::size_t seed = threats.size();
  for (std::size_t i = 0; i < threats.size(); ++i) {
    if (threats[i].position == position) {
      // Coincident centers: no bearing exists, only hovering is defensible.
      out.any_violation = out.avoided = out.empty_set = true;
      return out;
    }
    cones.push_back(collision_cone(position, threats[i].position, threats[i].combined_radius, 0.0));
    out.any_violation = out.any_violation || cones.back().already_violating;
    if (seed == threats.size() && in_cone(v_a - threats[i].velocity, cones.back())) seed = i;
  }
  out.avoided = seed < threats.size();

  FeasibleSet set;
  if (out.avoided) {
    set = search_feasible(v_a - threats[seed].velocity, threats[seed].velocity, cones[seed], params);
    for (std::size_t i = 0; i < threats.size(); ++i) {
      if (i == seed) continue;
      if (params.prune == PruneRule::containing_only && (i < seed || !in_cone(v_a - threats[i].velocity, cones[i]))) {
        continue;
      }
      set = prune_feasible(std::move(set), threats[i].velocity, cones[i]);
    }
  }

  if (!out.avoided) {
    out.velocity = v_a;
    return out;
  }
  const Selection pick = select_velocity(set, v_a);
  out.velocity = pick.velocity;
  out.empty_set = pick.fallback;
  return out;
}

}  // namespace utm

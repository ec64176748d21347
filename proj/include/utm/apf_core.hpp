#pragma once

#include <span>

#include "utm/geom2d.hpp"
#include "utm/vo_core.hpp"

namespace utm {

/// Artificial potential field baseline. Both forces have constant magnitude.
struct ApfParams {
  double k_att = 8.0;
  double k_rep = 15.0;
  double dt = 0.1;
  double dist_wp = 10.0;
  double dist_uav = 50.0;
  double dist_obs = 20.0;

  void validate() const;
  friend bool operator==(const ApfParams &, const ApfParams &) = default;
};

/// k_att along the direction to the waypoint.
Vec2 attractive_force(Vec2 pos, Vec2 waypoint, double k_att);

/// k_rep along the direction away from the threat.
Vec2 repulsive_force(Vec2 pos, Vec2 threat_pos, double k_rep);

struct ApfStep {
  Vec2 total_force;  // also the commanded velocity
  Vec2 position;     // pos + dt * total_force
};

/// One Euler step under attraction to `waypoint` plus one repulsion term per
/// threat. `threats` are the active ones (already range-filtered).
ApfStep apf_step(Vec2 pos, Vec2 waypoint, std::span<const Threat> threats, const ApfParams &params);

}  // namespace utm

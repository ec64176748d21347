#include "utm/apf_core.hpp"

#include "utm/errors.hpp"

namespace utm {

void ApfParams::validate() const {
  if (!(k_att > 0.0)) throw ConfigError("apf k_att must be positive");
  if (!(k_rep > 0.0)) throw ConfigError("apf k_rep must be positive");
  if (!(dt > 0.0)) throw ConfigError("apf dt must be positive");
  if (!(dist_wp > 0.0)) throw ConfigError("apf dist_wp must be positive");
  if (!(dist_uav > 0.0)) throw ConfigError("apf dist_uav must be positive");
  if (!(dist_obs > 0.0)) throw ConfigError("apf dist_obs must be positive");
}

Vec2 attractive_force(Vec2 pos, Vec2 waypoint, double k_att) {
  if (pos == waypoint) throw DomainError("attractive_force: position coincides with waypoint");
  return k_att * unit(waypoint - pos);
}

Vec2 repulsive_force(Vec2 pos, Vec2 threat_pos, double k_rep) {
  if (pos == threat_pos) throw DomainError("repulsive_force: position coincides with threat");
  return k_rep * unit(pos - threat_pos);
}

ApfStep apf_step(Vec2 pos, Vec2 waypoint, std::span<const Threat> threats, const ApfParams &params) {
  Vec2 total = pos == waypoint ? Vec2{} : attractive_force(pos, waypoint, params.k_att);
  for (const Threat &t : threats) {
    if (t.position == pos) continue;  // no defined direction to push along
    total += repulsive_force(pos, t.position, params.k_rep);
  }
  return {total, pos + params.dt * total};
}

}  // namespace utm

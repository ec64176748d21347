#pragma once

#include <span>
#include <vector>

#include "utm/geom2d.hpp"

namespace utm {

/// Cone of relative-velocity bearings that lead into the combined disc of
/// two circular bodies.
struct CollisionCone {
  Angle center_angle;        // bearing from A to B
  double half_angle = 0.0;   // in (0, pi/2]
  Angle c_left;              // center + half
  Angle c_right;             // center - half
  bool already_violating = false;  // bodies already overlap; cone clamped to a half-plane
};

enum class ThreatKind { uav, obstacle };

/// Another vehicle or an obstacle circle as seen by the avoiding UAV.
struct Threat {
  Vec2 position;
  Vec2 velocity;                 // (0,0) for obstacles
  double combined_radius = 0.0;  // R_A + R_B
  ThreatKind kind = ThreatKind::uav;
  int id = 0;
};

struct Candidate {
  Vec2 velocity;  // absolute velocity V_A'
  double theta = 0.0;
  double magnitude = 0.0;
};

/// Candidate absolute velocities in search order (ascending theta, then magnitude).
struct FeasibleSet {
  std::vector<Candidate> candidates;

  bool empty() const { return candidates.empty(); }
  std::size_t size() const { return candidates.size(); }
};

/// Which cones prune the feasible set once it has been seeded.
enum class PruneRule {
  all_active,       // every in-range threat: result lies outside all cones
  containing_only,  // only later threats whose cone holds the desired relative velocity
};

/// Velocity other UAVs are assumed to hold when building their cones.
enum class BroadcastVelocity {
  desired,    // their waypoint-tracking command kp * (wp - pos) for this step
  commanded,  // the velocity they actually flew on the previous step
};

struct VoParams {
  double theta_step = 0.2;
  double mag_step = 0.2;
  double dist_uav = 50.0;
  double dist_obs = 20.0;
  double kp = 0.2;
  double max_speed = 0.0;  // 0 = uncapped
  PruneRule prune = PruneRule::containing_only;
  BroadcastVelocity broadcast = BroadcastVelocity::commanded;

  void validate() const;
  friend bool operator==(const VoParams &, const VoParams &) = default;
};

/// Cone of A toward B. Throws DomainError when the positions coincide.
CollisionCone collision_cone(Vec2 p_a, Vec2 p_b, double r_a, double r_b);

/// Strict membership; the zero vector and the boundary rays are outside.
bool in_cone(Vec2 v_rel, const CollisionCone &cone);

/// Polar grid of relative velocities (theta, M) with M up to `speed`, in search order.
std::vector<Candidate> relative_velocity_grid(double speed, const VoParams &params);

/// Grid candidates outside `cone`, converted to absolute velocities v_ab' + v_b.
FeasibleSet search_feasible(Vec2 v_ab, Vec2 v_b, const CollisionCone &cone, const VoParams &params);

/// Drops candidates whose velocity relative to `v_b_other` lies in `cone_other`.
FeasibleSet prune_feasible(FeasibleSet set, Vec2 v_b_other, const CollisionCone &cone_other);

struct Selection {
  Vec2 velocity;
  bool fallback = false;  // set was empty, hovering
};

/// Candidate closest to `v_a_orig`, earliest on ties; (0,0) for an empty set.
Selection select_velocity(const FeasibleSet &set, Vec2 v_a_orig);

/// kp * (waypoint - position), clipped to max_speed when a cap is set.
Vec2 desired_velocity(Vec2 position, Vec2 waypoint, const VoParams &params);

struct AvoidResult {
  Vec2 velocity;
  Vec2 desired;  // kp * (waypoint - position)
  bool avoided = false;         // some cone contained the desired relative velocity
  bool empty_set = false;       // pruning emptied the set; velocity is the hover fallback
  bool any_violation = false;   // some threat was already inside the combined radius
};

/// Sorts threats nearest first, UAVs before obstacles at equal range, then by id.
void order_threats(Vec2 self_position, std::vector<Threat> &threats);

/// Velocity-obstacle step for one UAV. `threats` must already be filtered by
/// activation range and ordered; the first cone containing the desired
/// relative velocity seeds the feasible set and later containing cones prune it.
AvoidResult avoid(Vec2 position, Vec2 waypoint, std::span<const Threat> threats, const VoParams &params);

}  // namespace utm

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "utm/apf_core.hpp"
#include "utm/geom2d.hpp"
#include "utm/obstacle_field.hpp"
#include "utm/rrt_planner.hpp"
#include "utm/vo_core.hpp"

namespace utm {

enum class Algorithm { vo, apf };

const char *to_string(Algorithm a);
/// Throws ConfigError for anything but "vo" / "apf".
Algorithm parse_algorithm(std::string_view name);

const char *to_string(PruneRule r);
PruneRule parse_prune_rule(std::string_view name);
const char *to_string(BroadcastVelocity b);
BroadcastVelocity parse_broadcast(std::string_view name);

/// Vehicle and obstacle-approximation sizes.
struct WorldParams {
  double uav_radius = 12.0;
  double obs_radius = 12.0;
  double obs_spacing = 15.0;  // L

  void validate() const;
  friend bool operator==(const WorldParams &, const WorldParams &) = default;
};

/// Loop settings for the VO run. APF runs take dt and dist_wp from ApfParams.
struct SimParams {
  double dt = 0.1;
  double dist_wp = 10.0;
  int max_steps = 20'000;
  Algorithm algorithm = Algorithm::vo;

  void validate() const;
  friend bool operator==(const SimParams &, const SimParams &) = default;
};

struct Config {
  WorldParams world;
  SimParams sim;
  VoParams vo;
  ApfParams apf;
  PlannerParams planner;

  void validate() const;
  friend bool operator==(const Config &, const Config &) = default;
};

struct UavSpec {
  int id = 0;
  Vec2 start;
  Vec2 goal;
  double radius = 12.0;

  friend bool operator==(const UavSpec &, const UavSpec &) = default;
};

struct Scenario {
  std::string name;
  Rect bounds{{200.0, 200.0}, 400.0, 400.0};
  std::vector<RectObstacle> rectangles;
  std::vector<UavSpec> uavs;
  Config config;

  /// Throws ConfigError naming the offending UAV or obstacle.
  void validate() const;
  ObstacleField obstacle_field() const;
  friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Parses and validates a scenario document. Unknown keys are rejected;
/// absent parameters take their defaults. Throws ParseError with line and
/// column for malformed JSON, ConfigError for invalid contents.
Scenario parse_scenario(std::string_view json_text);

/// Reads and parses a scenario file. Throws IoError if it cannot be read.
Scenario load_scenario(const std::filesystem::path &path);

/// Serializes every field, parameters included, so parsing it back yields an equal Scenario.
std::string dump_scenario(const Scenario &scenario);
void save_scenario(const Scenario &scenario, const std::filesystem::path &path);

}  // namespace utm

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "utm/geom2d.hpp"
#include "utm/sim_engine.hpp"

namespace utm {

/// Sum of consecutive segment lengths. Needs at least one sample.
double path_length(std::span<const Vec2> positions);

struct PairSeries {
  int uav_a = 0;
  int uav_b = 0;
  std::vector<double> distance;  // one entry per timestamp
  double minimum = 0.0;
};

/// Every unordered pair (ids ascending, a < b in list order) with its distance
/// series. Throws ConfigError when the series differ in length or timestamps.
std::vector<PairSeries> pairwise_distances(std::span<const int> ids,
                                           std::span<const std::vector<Sample>> trajectories);

struct UavReport {
  int uav_id = 0;
  /// Empty when the UAV was involved in any collision (the "--" entry).
  std::optional<double> path_length;
  double straight_line = 0.0;  // start to final position
  bool arrived = false;        // an arrived event was recorded

  bool collided() const { return !path_length.has_value(); }
};

struct RunReport {
  std::vector<UavReport> uavs;
  std::vector<PairSeries> pairs;
  std::map<EventKind, int> event_counts;
  int steps = 0;
  int empty_set_events = 0;
  bool completed = false;

  int collisions() const;
  double min_separation() const;  // +inf with fewer than two UAVs
};

/// Path-length comparison over the UAVs that the baseline flew to the goal
/// without a collision. A UAV the first run failed to finish cleanly counts
/// against it.
struct LengthTally {
  int comparable = 0;
  int first_no_longer = 0;  // first run's length <= second's
  std::vector<double> differences;  // first - second, per comparable UAV
};

void tally_path_lengths(const RunReport &first, const RunReport &baseline, LengthTally &tally);

/// Aggregates a run. Throws ConfigError for a result without samples.
RunReport build_report(const SimResult &result);

}  // namespace utm

#include "utm/metrics.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "utm/errors.hpp"

namespace utm {

double path_length(std::span<const Vec2> positions) {
  if (positions.empty()) throw ConfigError("path_length: trajectory has no samples");
  double total = 0.0;
  for (std::size_t i = 1; i < positions.size(); ++i) total += distance(positions[i - 1], positions[i]);
  return total;
}

std::vector<PairSeries> pairwise_distances(std::span<const int> ids,
                                           std::span<const std::vector<Sample>> trajectories) {
  if (ids.size() != trajectories.size()) throw ConfigError("pairwise_distances: one id per trajectory required");
  for (const auto &traj : trajectories) {
    if (traj.size() != trajectories.front().size()) {
      throw ConfigError("pairwise_distances: trajectories have different lengths");
    }
    for (std::size_t k = 0; k < traj.size(); ++k) {
      if (traj[k].t != trajectories.front()[k].t) throw ConfigError("pairwise_distances: timestamps are misaligned");
    }
  }

  std::vector<PairSeries> out;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    for (std::size_t j = i + 1; j < trajectories.size(); ++j) {
      PairSeries p{ids[i], ids[j], {}, std::numeric_limits<double>::infinity()};
      p.distance.reserve(trajectories[i].size());
      for (std::size_t k = 0; k < trajectories[i].size(); ++k) {
        const double d = distance(trajectories[i][k].position, trajectories[j][k].position);
        p.distance.push_back(d);
        p.minimum = std::min(p.minimum, d);
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

int RunReport::collisions() const {
  int n = 0;
  for (const auto kind : {EventKind::uav_uav_collision, EventKind::uav_obstacle_collision}) {
    if (const auto it = event_counts.find(kind); it != event_counts.end()) n += it->second;
  }
  return n;
}

double RunReport::min_separation() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto &p : pairs) m = std::min(m, p.minimum);
  return m;
}

RunReport build_report(const SimResult &result) {
  if (result.trajectories.empty() || result.trajectories.front().empty()) {
    throw ConfigError("build_report: result has no trajectory samples");
  }

  std::set<int> collided, arrived;
  RunReport report;
  for (const Event &e : result.events) {
    ++report.event_counts[e.kind];
    if (e.kind == EventKind::uav_uav_collision) {
      collided.insert(e.uav);
      collided.insert(e.other);
    } else if (e.kind == EventKind::uav_obstacle_collision) {
      collided.insert(e.uav);
    } else if (e.kind == EventKind::arrived) {
      arrived.insert(e.uav);
    }
  }
  report.steps = result.steps;
  report.completed = result.completed;
  report.empty_set_events = report.event_counts[EventKind::empty_feasible_set];

  for (std::size_t i = 0; i < result.uav_ids.size(); ++i) {
    const auto &traj = result.trajectories[i];
    std::vector<Vec2> positions;
    positions.reserve(traj.size());
    for (const Sample &s : traj) positions.push_back(s.position);

    UavReport u;
    u.uav_id = result.uav_ids[i];
    u.straight_line = distance(positions.front(), positions.back());
    u.arrived = arrived.contains(u.uav_id);
    if (!collided.contains(u.uav_id)) u.path_length = path_length(positions);
    report.uavs.push_back(u);
  }
  report.pairs = pairwise_distances(result.uav_ids, result.trajectories);
  return report;
}

void tally_path_lengths(const RunReport &first, const RunReport &baseline, LengthTally &tally) {
  for (const UavReport &b : baseline.uavs) {
    if (!b.arrived || b.collided()) continue;
    const auto it = std::find_if(first.uavs.begin(), first.uavs.end(),
                                 [&](const UavReport &u) { return u.uav_id == b.uav_id; });
    if (it == first.uavs.end()) throw ConfigError("tally_path_lengths: UAV sets differ");
    ++tally.comparable;
    if (!it->arrived || it->collided()) continue;
    tally.differences.push_back(*it->path_length - *b.path_length);
    if (*it->path_length <= *b.path_length) ++tally.first_no_longer;
  }
}

}  // namespace utm

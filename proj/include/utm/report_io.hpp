#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "utm/metrics.hpp"
#include "utm/rrt_planner.hpp"
#include "utm/sim_engine.hpp"

namespace utm {

/// `t,uav_id,x,y,vx,vy`, one row per UAV per sample, fixed six decimals.
std::string trajectories_csv(const SimResult &result);

/// `t,<idA>-<idB>,...`, one column per unordered pair.
std::string distances_csv(const SimResult &result, const RunReport &report);

/// Path lengths (or "collision"), pairwise minima, event counts, completion flag.
std::string report_json(const RunReport &report);

std::string events_json(const SimResult &result);

/// `uav_id,index,x,y` for every planned waypoint.
std::string waypoints_csv(std::span<const int> ids, std::span<const WaypointPath> paths);

/// Side-by-side path lengths per UAV, "--" where the UAV collided.
std::string compare_table(const RunReport &vo, const RunReport &apf);

/// Writes trajectories.csv, distances.csv, report.json and events.json into
/// `dir`, creating it if needed. Throws IoError with the failing path.
void export_result(const SimResult &result, const RunReport &report, const std::filesystem::path &dir);

/// Writes `contents` to `path`. Throws IoError with the failing path.
void write_text_file(const std::filesystem::path &path, const std::string &contents);

}  // namespace utm

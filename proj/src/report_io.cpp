#include "utm/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "utm/errors.hpp"

namespace utm {

using nlohmann::ordered_json;

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string pair_label(int a, int b) { return std::to_string(a) + "-" + std::to_string(b); }

}  // namespace

std::string trajectories_csv(const SimResult &result) {
  std::string out = "t,uav_id,x,y,vx,vy\n";
  const std::size_t samples = result.trajectories.empty() ? 0 : result.trajectories.front().size();
  for (std::size_t k = 0; k < samples; ++k) {
    for (std::size_t i = 0; i < result.uav_ids.size(); ++i) {
      const Sample &s = result.trajectories[i][k];
      out += fixed6(s.t) + "," + std::to_string(result.uav_ids[i]) + "," + fixed6(s.position.x) + "," +
             fixed6(s.position.y) + "," + fixed6(s.velocity.x) + "," + fixed6(s.velocity.y) + "\n";
    }
  }
  return out;
}

std::string distances_csv(const SimResult &result, const RunReport &report) {
  std::string out = "t";
  for (const PairSeries &p : report.pairs) out += "," + pair_label(p.uav_a, p.uav_b);
  out += "\n";
  const std::size_t samples = result.trajectories.empty() ? 0 : result.trajectories.front().size();
  for (std::size_t k = 0; k < samples; ++k) {
    out += fixed6(result.trajectories.front()[k].t);
    for (const PairSeries &p : report.pairs) out += "," + fixed6(p.distance[k]);
    out += "\n";
  }
  return out;
}

std::string report_json(const RunReport &report) {
  ordered_json doc;
  doc["completed"] = report.completed;
  doc["steps"] = report.steps;
  ordered_json lengths = ordered_json::object();
  for (const UavReport &u : report.uavs) {
    lengths[std::to_string(u.uav_id)] = u.path_length ? ordered_json(*u.path_length) : ordered_json("collision");
  }
  doc["path_lengths"] = lengths;
  ordered_json arrived = ordered_json::object();
  for (const UavReport &u : report.uavs) arrived[std::to_string(u.uav_id)] = u.arrived;
  doc["arrived"] = arrived;
  ordered_json minima = ordered_json::object();
  for (const PairSeries &p : report.pairs) minima[pair_label(p.uav_a, p.uav_b)] = p.minimum;
  doc["min_distances"] = minima;
  ordered_json counts = ordered_json::object();
  for (const auto kind : {EventKind::waypoint_advanced, EventKind::empty_feasible_set, EventKind::uav_uav_collision,
                          EventKind::uav_obstacle_collision, EventKind::arrived}) {
    const auto it = report.event_counts.find(kind);
    counts[to_string(kind)] = it == report.event_counts.end() ? 0 : it->second;
  }
  doc["event_counts"] = counts;
  doc["empty_set_events"] = report.empty_set_events;
  return doc.dump(2) + "\n";
}

std::string events_json(const SimResult &result) {
  ordered_json doc = ordered_json::array();
  for (const Event &e : result.events) {
    ordered_json item;
    item["t"] = e.t;
    item["kind"] = to_string(e.kind);
    item["uav"] = e.uav;
    if (e.other >= 0) item["other"] = e.other;
    if (!e.detail.empty()) item["detail"] = e.detail;
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::string waypoints_csv(std::span<const int> ids, std::span<const WaypointPath> paths) {
  std::string out = "uav_id,index,x,y\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t k = 0; k < paths[i].waypoints.size(); ++k) {
      const Vec2 w = paths[i].waypoints[k];
      out += std::to_string(ids[i]) + "," + std::to_string(k) + "," + fixed6(w.x) + "," + fixed6(w.y) + "\n";
    }
  }
  return out;
}

std::string compare_table(const RunReport &vo, const RunReport &apf) {
  auto cell = [](const RunReport &r, int id) -> std::string {
    for (const UavReport &u : r.uavs) {
      if (u.uav_id != id) continue;
      if (!u.path_length) return "--";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f%s", *u.path_length, u.arrived ? "" : "*");
      return buf;
    }
    return "n/a";
  };
  std::string out = "|       | RRT-VO (m) | RRT-APF (m) |\n|-------|------------|-------------|\n";
  for (const UavReport &u : vo.uavs) {
    char row[128];
    std::snprintf(row, sizeof row, "| UAV %d | %10s | %11s |\n", u.uav_id, cell(vo, u.uav_id).c_str(),
                  cell(apf, u.uav_id).c_str());
    out += row;
  }
  out += "\n`--` collided, `*` still en route when the run stopped.\n";
  return out;
}

void write_text_file(const std::filesystem::path &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void export_result(const SimResult &result, const RunReport &report, const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  write_text_file(dir / "trajectories.csv", trajectories_csv(result));
  write_text_file(dir / "distances.csv", distances_csv(result, report));
  write_text_file(dir / "report.json", report_json(report));
  write_text_file(dir / "events.json", events_json(result));
}

}  // namespace utm

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

#include "utm/errors.hpp"
#include "utm/report_io.hpp"

using namespace utm;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Scenario five_uavs() {
  Scenario s;
  s.rectangles = {{1, {200, 200}, 60, 60}};
  s.uavs = {{1, {20, 20}, {380, 380}}, {2, {380, 20}, {20, 380}}, {3, {20, 200}, {380, 200}},
            {4, {200, 20}, {200, 380}}, {5, {380, 300}, {20, 100}}};
  s.config.sim.max_steps = 30;
  return s;
}

}  // namespace

TEST_CASE("single UAV, three steps") {
  Scenario s;
  s.uavs = {{1, {20, 20}, {380, 20}}};
  s.config.sim.max_steps = 3;
  const SimResult r = run(s, 1);
  const RunReport rep = build_report(r);
  const auto rows = lines(trajectories_csv(r));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "t,uav_id,x,y,vx,vy");
  CHECK(rows[1].rfind("0.000000,1,20.000000,20.000000,", 0) == 0);
  CHECK(rows[4].rfind("0.300000,1,", 0) == 0);
  CHECK(lines(distances_csv(r, rep)).front() == "t");
}

TEST_CASE("five UAVs") {
  const SimResult r = run(five_uavs(), 2);
  const RunReport rep = build_report(r);

  const auto traj = lines(trajectories_csv(r));
  CHECK(traj.size() == 1 + 5 * static_cast<std::size_t>(r.steps + 1));

  const auto dist = lines(distances_csv(r, rep));
  CHECK(dist.front() == "t,1-2,1-3,1-4,1-5,2-3,2-4,2-5,3-4,3-5,4-5");
  CHECK(dist.size() == static_cast<std::size_t>(r.steps) + 2);

  const auto doc = nlohmann::json::parse(report_json(rep));
  CHECK(doc["completed"] == false);
  CHECK(doc["steps"] == 30);
  CHECK(doc["path_lengths"].size() == 5);
  CHECK(doc["min_distances"].size() == 10);
  for (const char *k : {"waypoint_advanced", "empty_feasible_set", "uav_uav_collision", "uav_obstacle_collision", "arrived"}) {
    CHECK(doc["event_counts"].contains(k));
  }

  const auto events = nlohmann::json::parse(events_json(r));
  CHECK(events.is_array());
}

TEST_CASE("collision marker in report and table") {
  SimResult r;
  r.uav_ids = {1, 2};
  r.trajectories = {{{0, {0, 0}, {}}, {0.1, {1, 0}, {}}}, {{0, {0, 50}, {}}, {0.1, {0, 51}, {}}}};
  r.events = {{0.1, EventKind::uav_obstacle_collision, 2, 3, ""}, {0.1, EventKind::arrived, 1, -1, ""}};
  r.steps = 1;
  const RunReport rep = build_report(r);
  const auto doc = nlohmann::json::parse(report_json(rep));
  CHECK(doc["path_lengths"]["1"] == 1.0);
  CHECK(doc["path_lengths"]["2"] == "collision");

  const std::string table = compare_table(rep, rep);
  CHECK(table.find("| UAV 1 |") != std::string::npos);
  CHECK(table.find("1.00") != std::string::npos);
  CHECK(table.find("--") != std::string::npos);
}

TEST_CASE("waypoints_csv") {
  const std::vector<int> ids{4, 9};
  const std::vector<WaypointPath> paths{{{{0, 0}, {1, 2}}}, {{{5, 5}}}};
  const auto rows = lines(waypoints_csv(ids, paths));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "uav_id,index,x,y");
  CHECK(rows[2] == "4,1,1.000000,2.000000");
  CHECK(rows[3] == "9,0,5.000000,5.000000");
}

TEST_CASE("export is byte-identical across reruns") {
  const Scenario s = five_uavs();
  const fs::path a = fs::temp_directory_path() / "utm_export_a", b = fs::temp_directory_path() / "utm_export_b";
  fs::remove_all(a);
  fs::remove_all(b);
  for (const auto &dir : {a, b}) {
    const SimResult r = run(s, 3);
    export_result(r, build_report(r), dir);
  }
  for (const char *f : {"trajectories.csv", "distances.csv", "report.json", "events.json"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("unwritable destinations raise IoError") {
  Scenario s;
  s.uavs = {{1, {20, 20}, {380, 20}}};
  s.config.sim.max_steps = 2;
  const SimResult r = run(s, 1);
  const RunReport rep = build_report(r);

  const fs::path blocker = fs::temp_directory_path() / "utm_export_blocker";
  fs::remove_all(blocker);
  { std::ofstream(blocker) << "not a directory"; }
  CHECK_THROWS_AS(export_result(r, rep, blocker / "out"), IoError);
  CHECK_THROWS_AS(write_text_file(blocker / "x.csv", "x"), IoError);
  fs::remove(blocker);

  if (::geteuid() != 0) {  // root ignores permission bits
    const fs::path ro = fs::temp_directory_path() / "utm_export_readonly";
    fs::create_directories(ro);
    fs::permissions(ro, fs::perms::owner_read | fs::perms::owner_exec);
    CHECK_THROWS_AS(export_result(r, rep, ro), IoError);
    fs::permissions(ro, fs::perms::owner_all);
    fs::remove_all(ro);
  }
}

#include "utm/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "utm/errors.hpp"

namespace utm {

using nlohmann::json;

const char *to_string(Algorithm a) { return a == Algorithm::vo ? "vo" : "apf"; }

Algorithm parse_algorithm(std::string_view name) {
  if (name == "vo") return Algorithm::vo;
  if (name == "apf") return Algorithm::apf;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected vo or apf)");
}

const char *to_string(PruneRule r) { return r == PruneRule::all_active ? "all_active" : "containing_only"; }

PruneRule parse_prune_rule(std::string_view name) {
  if (name == "all_active") return PruneRule::all_active;
  if (name == "containing_only") return PruneRule::containing_only;
  throw ConfigError("unknown prune rule '" + std::string(name) + "' (expected all_active or containing_only)");
}

const char *to_string(BroadcastVelocity b) { return b == BroadcastVelocity::desired ? "desired" : "commanded"; }

BroadcastVelocity parse_broadcast(std::string_view name) {
  if (name == "desired") return BroadcastVelocity::desired;
  if (name == "commanded") return BroadcastVelocity::commanded;
  throw ConfigError("unknown broadcast velocity '" + std::string(name) + "' (expected desired or commanded)");
}

void WorldParams::validate() const {
  if (!(uav_radius > 0.0)) throw ConfigError("world uav_radius must be positive");
  if (!(obs_radius > 0.0)) throw ConfigError("world obs_radius must be positive");
  if (!(obs_spacing > 0.0 && obs_spacing < 2.0 * obs_radius)) {
    throw ConfigError("world obs_spacing must lie in (0, 2*obs_radius)");
  }
}

void SimParams::validate() const {
  if (!(dt > 0.0)) throw ConfigError("sim dt must be positive");
  if (!(dist_wp > 0.0)) throw ConfigError("sim dist_wp must be positive");
  if (max_steps <= 0) throw ConfigError("sim max_steps must be positive");
}

void Config::validate() const {
  world.validate();
  sim.validate();
  vo.validate();
  apf.validate();
  planner.validate();
}

void Scenario::validate() const {
  config.validate();
  if (!(bounds.width > 0.0 && bounds.height > 0.0)) throw ConfigError("scenario bounds must be non-empty");

  std::set<int> rect_ids;
  for (const RectObstacle &r : rectangles) {
    const std::string who = "obstacle " + std::to_string(r.id);
    if (!rect_ids.insert(r.id).second) throw ConfigError(who + ": duplicate id");
    if (!(r.width > 0.0 && r.height > 0.0)) throw ConfigError(who + ": width and height must be positive");
    if (!is_finite(r.center)) throw ConfigError(who + ": center must be finite");
  }

  std::set<int> uav_ids;
  for (const UavSpec &u : uavs) {
    const std::string who = "UAV " + std::to_string(u.id);
    if (!uav_ids.insert(u.id).second) throw ConfigError(who + ": duplicate id");
    if (!(u.radius > 0.0)) throw ConfigError(who + ": radius must be positive");
    for (const auto &[label, p] : {std::pair{"start", u.start}, std::pair{"goal", u.goal}}) {
      if (!is_finite(p) || !bounds.contains(p)) throw ConfigError(who + ": " + label + " lies outside the bounds");
      for (const RectObstacle &r : rectangles) {
        if (point_rect_distance(p, r.rect()) <= config.planner.inflation) {
          throw ConfigError(who + ": " + label + " lies inside inflated obstacle " + std::to_string(r.id));
        }
      }
    }
  }
}

ObstacleField Scenario::obstacle_field() const {
  return ObstacleField(rectangles, config.world.obs_radius, config.world.obs_spacing);
}

namespace {

void check_keys(const json &obj, std::initializer_list<std::string_view> allowed, const std::string &where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto &[key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown field '" + key + "'");
    }
  }
}

const json &require(const json &obj, const char *key, const std::string &where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
  return *it;
}

double number(const json &v, const std::string &where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

int integer(const json &v, const std::string &where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<int>();
}

Vec2 point(const json &v, const std::string &where) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(where + ": expected [x, y]");
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

void maybe(const json &obj, const char *key, double &field, const std::string &where) {
  if (const auto it = obj.find(key); it != obj.end()) field = number(*it, where + "." + key);
}

void maybe(const json &obj, const char *key, int &field, const std::string &where) {
  if (const auto it = obj.find(key); it != obj.end()) field = integer(*it, where + "." + key);
}

void read_params(const json &params, Config &cfg, bool &inflation_given) {
  check_keys(params, {"world", "sim", "vo", "apf", "planner"}, "params");
  if (const auto it = params.find("world"); it != params.end()) {
    const std::string w = "params.world";
    check_keys(*it, {"uav_radius", "obs_radius", "obs_spacing"}, w);
    maybe(*it, "uav_radius", cfg.world.uav_radius, w);
    maybe(*it, "obs_radius", cfg.world.obs_radius, w);
    maybe(*it, "obs_spacing", cfg.world.obs_spacing, w);
  }
  if (const auto it = params.find("sim"); it != params.end()) {
    const std::string w = "params.sim";
    check_keys(*it, {"dt", "dist_wp", "max_steps", "algorithm"}, w);
    maybe(*it, "dt", cfg.sim.dt, w);
    maybe(*it, "dist_wp", cfg.sim.dist_wp, w);
    maybe(*it, "max_steps", cfg.sim.max_steps, w);
    if (const auto a = it->find("algorithm"); a != it->end()) {
      if (!a->is_string()) throw ConfigError(w + ".algorithm: expected a string");
      cfg.sim.algorithm = parse_algorithm(a->get<std::string>());
    }
  }
  if (const auto it = params.find("vo"); it != params.end()) {
    const std::string w = "params.vo";
    check_keys(*it, {"theta_step", "mag_step", "dist_uav", "dist_obs", "kp", "max_speed", "prune", "broadcast"}, w);
    maybe(*it, "theta_step", cfg.vo.theta_step, w);
    maybe(*it, "mag_step", cfg.vo.mag_step, w);
    maybe(*it, "dist_uav", cfg.vo.dist_uav, w);
    maybe(*it, "dist_obs", cfg.vo.dist_obs, w);
    maybe(*it, "kp", cfg.vo.kp, w);
    maybe(*it, "max_speed", cfg.vo.max_speed, w);
    if (const auto p = it->find("prune"); p != it->end()) {
      if (!p->is_string()) throw ConfigError(w + ".prune: expected a string");
      cfg.vo.prune = parse_prune_rule(p->get<std::string>());
    }
    if (const auto b = it->find("broadcast"); b != it->end()) {
      if (!b->is_string()) throw ConfigError(w + ".broadcast: expected a string");
      cfg.vo.broadcast = parse_broadcast(b->get<std::string>());
    }
  }
  if (const auto it = params.find("apf"); it != params.end()) {
    const std::string w = "params.apf";
    check_keys(*it, {"k_att", "k_rep", "dt", "dist_wp", "dist_uav", "dist_obs"}, w);
    maybe(*it, "k_att", cfg.apf.k_att, w);
    maybe(*it, "k_rep", cfg.apf.k_rep, w);
    maybe(*it, "dt", cfg.apf.dt, w);
    maybe(*it, "dist_wp", cfg.apf.dist_wp, w);
    maybe(*it, "dist_uav", cfg.apf.dist_uav, w);
    maybe(*it, "dist_obs", cfg.apf.dist_obs, w);
  }
  if (const auto it = params.find("planner"); it != params.end()) {
    const std::string w = "params.planner";
    check_keys(*it, {"step_size", "goal_bias", "max_iters", "goal_radius", "inflation"}, w);
    maybe(*it, "step_size", cfg.planner.step_size, w);
    maybe(*it, "goal_bias", cfg.planner.goal_bias, w);
    maybe(*it, "max_iters", cfg.planner.max_iters, w);
    maybe(*it, "goal_radius", cfg.planner.goal_radius, w);
    inflation_given = it->contains("inflation");
    maybe(*it, "inflation", cfg.planner.inflation, w);
  }
}

std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()) && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json to_json(Vec2 p) { return json::array({p.x, p.y}); }

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error &e) {
    throw ParseError("scenario parse error at " + line_context(json_text, e.byte) + ": " + e.what());
  }

  check_keys(doc, {"name", "bounds", "rectangles", "uavs", "params"}, "scenario");
  Scenario s;
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ConfigError("scenario.name: expected a string");
    s.name = it->get<std::string>();
  }
  if (const auto it = doc.find("bounds"); it != doc.end()) {
    check_keys(*it, {"min", "max"}, "bounds");
    const Vec2 lo = point(require(*it, "min", "bounds"), "bounds.min");
    const Vec2 hi = point(require(*it, "max", "bounds"), "bounds.max");
    if (!(hi.x > lo.x && hi.y > lo.y)) throw ConfigError("bounds: max must exceed min on both axes");
    s.bounds = {0.5 * (lo + hi), hi.x - lo.x, hi.y - lo.y};
  }

  bool inflation_given = false;
  if (const auto it = doc.find("params"); it != doc.end()) read_params(*it, s.config, inflation_given);
  s.config.planner.bounds = s.bounds;
  if (!inflation_given) s.config.planner.inflation = s.config.world.uav_radius;

  if (const auto it = doc.find("rectangles"); it != doc.end()) {
    if (!it->is_array()) throw ConfigError("rectangles: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json &r = (*it)[i];
      const std::string w = "rectangles[" + std::to_string(i) + "]";
      check_keys(r, {"id", "center", "width", "height"}, w);
      RectObstacle rect;
      rect.id = r.contains("id") ? integer(r["id"], w + ".id") : static_cast<int>(i) + 1;
      rect.center = point(require(r, "center", w), w + ".center");
      rect.width = number(require(r, "width", w), w + ".width");
      rect.height = number(require(r, "height", w), w + ".height");
      s.rectangles.push_back(rect);
    }
  }

  const json &uavs = require(doc, "uavs", "scenario");
  if (!uavs.is_array()) throw ConfigError("uavs: expected an array");
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    const json &u = uavs[i];
    const std::string w = "uavs[" + std::to_string(i) + "]";
    check_keys(u, {"id", "start", "goal", "radius"}, w);
    UavSpec spec;
    spec.id = integer(require(u, "id", w), w + ".id");
    spec.start = point(require(u, "start", w), w + ".start");
    spec.goal = point(require(u, "goal", w), w + ".goal");
    spec.radius = s.config.world.uav_radius;
    maybe(u, "radius", spec.radius, w);
    s.uavs.push_back(spec);
  }

  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_scenario(text.str());
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ConfigError &e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string dump_scenario(const Scenario &s) {
  const Config &c = s.config;
  json doc;
  doc["name"] = s.name;
  doc["bounds"] = {{"min", to_json(s.bounds.min_corner())}, {"max", to_json(s.bounds.max_corner())}};
  doc["rectangles"] = json::array();
  for (const RectObstacle &r : s.rectangles) {
    doc["rectangles"].push_back({{"id", r.id}, {"center", to_json(r.center)}, {"width", r.width}, {"height", r.height}});
  }
  doc["uavs"] = json::array();
  for (const UavSpec &u : s.uavs) {
    doc["uavs"].push_back({{"id", u.id}, {"start", to_json(u.start)}, {"goal", to_json(u.goal)}, {"radius", u.radius}});
  }
  doc["params"] = {
      {"world", {{"uav_radius", c.world.uav_radius}, {"obs_radius", c.world.obs_radius}, {"obs_spacing", c.world.obs_spacing}}},
      {"sim",
       {{"dt", c.sim.dt}, {"dist_wp", c.sim.dist_wp}, {"max_steps", c.sim.max_steps}, {"algorithm", to_string(c.sim.algorithm)}}},
      {"vo",
       {{"theta_step", c.vo.theta_step},
        {"mag_step", c.vo.mag_step},
        {"dist_uav", c.vo.dist_uav},
        {"dist_obs", c.vo.dist_obs},
        {"kp", c.vo.kp},
        {"max_speed", c.vo.max_speed},
        {"prune", to_string(c.vo.prune)},
        {"broadcast", to_string(c.vo.broadcast)}}},
      {"apf",
       {{"k_att", c.apf.k_att},
        {"k_rep", c.apf.k_rep},
        {"dt", c.apf.dt},
        {"dist_wp", c.apf.dist_wp},
        {"dist_uav", c.apf.dist_uav},
        {"dist_obs", c.apf.dist_obs}}},
      {"planner",
       {{"step_size", c.planner.step_size},
        {"goal_bias", c.planner.goal_bias},
        {"max_iters", c.planner.max_iters},
        {"goal_radius", c.planner.goal_radius},
        {"inflation", c.planner.inflation}}},
  };
  return doc.dump(2) + "\n";
}

void save_scenario(const Scenario &scenario, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << dump_scenario(scenario);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace utm

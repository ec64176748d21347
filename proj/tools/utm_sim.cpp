// utm-sim: plan, fly and compare multi-UAV scenarios from the command line.
//
//   utm-sim run     --scenario <file> --algo vo|apf --seed <n> --out <dir> [--max-steps <n>]
//   utm-sim plan    --scenario <file> --seed <n> --out <dir>
//   utm-sim compare --scenario <file> --seeds <n0..n1> --out <dir>
//
// Exit codes: 0 success, 2 scenario/validation error, 3 planning failure, 4 I/O error.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "utm/errors.hpp"
#include "utm/metrics.hpp"
#include "utm/report_io.hpp"
#include "utm/scenario.hpp"
#include "utm/sim_engine.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPlanning = 3;
constexpr int kExitIo = 4;

std::uint64_t parse_u64(const std::string &text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw utm::ConfigError("not a non-negative integer: '" + text + "'");
  }
  return v;
}

// "n0..n1" (inclusive) or a single "n".
std::vector<std::uint64_t> parse_seed_range(const std::string &text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_u64(text)};
  const std::uint64_t lo = parse_u64(text.substr(0, dots));
  const std::uint64_t hi = parse_u64(text.substr(dots + 2));
  if (hi < lo) throw utm::ConfigError("seed range '" + text + "' is empty");
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  return seeds;
}

std::vector<int> uav_ids(const utm::Scenario &s) {
  std::vector<int> ids;
  for (const auto &u : s.uavs) ids.push_back(u.id);
  return ids;
}

void print_summary(const utm::RunReport &r, const char *algo) {
  std::printf("%s: completed=%s steps=%d collisions=%d empty_sets=%d min_separation=%.3f\n", algo,
              r.completed ? "true" : "false", r.steps, r.collisions(), r.empty_set_events, r.min_separation());
}

int cmd_run(const std::string &scenario_path, const std::string &algo, std::uint64_t seed, const std::string &out,
            int max_steps) {
  utm::Scenario scenario = utm::load_scenario(scenario_path);
  scenario.config.sim.algorithm = utm::parse_algorithm(algo);
  if (max_steps > 0) scenario.config.sim.max_steps = max_steps;

  const utm::SimResult result = utm::run(scenario, seed);
  const utm::RunReport report = utm::build_report(result);
  utm::export_result(result, report, out);
  utm::save_scenario(scenario, std::filesystem::path(out) / "scenario.json");
  print_summary(report, algo.c_str());
  return 0;
}

int cmd_plan(const std::string &scenario_path, std::uint64_t seed, const std::string &out) {
  const utm::Scenario scenario = utm::load_scenario(scenario_path);
  const auto paths = utm::plan_all(scenario, seed);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw utm::IoError("cannot create directory " + out + ": " + ec.message());
  utm::write_text_file(std::filesystem::path(out) / "waypoints.csv", utm::waypoints_csv(uav_ids(scenario), paths));
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::printf("UAV %d: %zu waypoints, %.2f m\n", scenario.uavs[i].id, paths[i].size(), paths[i].length());
  }
  return 0;
}

int cmd_compare(const std::string &scenario_path, const std::string &seeds_text, const std::string &out) {
  const utm::Scenario scenario = utm::load_scenario(scenario_path);
  const std::vector<std::uint64_t> seeds = parse_seed_range(seeds_text);
  const std::filesystem::path root(out);

  std::string summary;
  utm::LengthTally tally;
  for (const std::uint64_t seed : seeds) {
    // Both algorithms fly the same plan.
    const auto paths = utm::plan_all(scenario, seed);
    utm::Scenario vo_s = scenario, apf_s = scenario;
    vo_s.config.sim.algorithm = utm::Algorithm::vo;
    apf_s.config.sim.algorithm = utm::Algorithm::apf;
    const utm::SimResult vo = utm::simulate(vo_s, paths);
    const utm::SimResult apf = utm::simulate(apf_s, paths);
    const utm::RunReport vo_r = utm::build_report(vo), apf_r = utm::build_report(apf);

    const auto dir = root / ("seed_" + std::to_string(seed));
    utm::export_result(vo, vo_r, dir / "vo");
    utm::export_result(apf, apf_r, dir / "apf");
    utm::write_text_file(dir / "waypoints.csv", utm::waypoints_csv(uav_ids(scenario), paths));

    const std::string table = utm::compare_table(vo_r, apf_r);
    utm::write_text_file(dir / "compare.md", table);
    summary += "## seed " + std::to_string(seed) + "\n\n" + table + "\n";
    std::printf("seed %llu\n%s", static_cast<unsigned long long>(seed), table.c_str());
    print_summary(vo_r, "vo");
    print_summary(apf_r, "apf");

    utm::tally_path_lengths(vo_r, apf_r, tally);
  }
  const std::string line = "VO path no longer than APF in " + std::to_string(tally.first_no_longer) + " of " +
                           std::to_string(tally.comparable) +
                           " (uav, seed) pairs where APF reached the goal without a collision\n";
  summary += line;
  utm::write_text_file(root / "compare.md", summary);
  std::printf("%s", line.c_str());
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Multi-UAV traffic management simulator (RRT waypoints + VO/APF avoidance)"};
  app.require_subcommand(1);

  std::string scenario, out, algo = "vo", seeds;
  std::string seed_text = "0";
  int max_steps = 0;

  auto *run = app.add_subcommand("run", "Plan and fly a scenario with one avoidance algorithm");
  run->add_option("--scenario", scenario, "Scenario JSON file")->required();
  run->add_option("--algo", algo, "vo or apf")->check(CLI::IsMember({"vo", "apf"}));
  run->add_option("--seed", seed_text, "Run seed");
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--max-steps", max_steps, "Override the step limit")->check(CLI::PositiveNumber);

  auto *plan = app.add_subcommand("plan", "Plan RRT waypoints only (writes waypoints.csv)");
  plan->add_option("--scenario", scenario, "Scenario JSON file")->required();
  plan->add_option("--seed", seed_text, "Run seed");
  plan->add_option("--out", out, "Output directory")->required();

  auto *compare = app.add_subcommand("compare", "Fly VO and APF on identical waypoints for a seed range");
  compare->add_option("--scenario", scenario, "Scenario JSON file")->required();
  compare->add_option("--seeds", seeds, "Seed range n0..n1")->required();
  compare->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(scenario, algo, parse_u64(seed_text), out, max_steps);
    if (*plan) return cmd_plan(scenario, parse_u64(seed_text), out);
    return cmd_compare(scenario, seeds, out);
  } catch (const utm::PlanningError &e) {
    std::cerr << "planning failure: " << e.what() << "\n";
    return kExitPlanning;
  } catch (const utm::IoError &e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const utm::Error &e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitConfig;
  }
}

// Copyright 2026 The fairprov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairprov/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fairprov/ldgraph.hpp"

namespace fairprov {

namespace {

namespace fs = std::filesystem;

// stream keys
constexpr std::uint64_t kPoseStream = 0x01;
constexpr std::uint64_t kObstacleStream = 0x02;
constexpr std::uint64_t kRunStream = 0x03;
constexpr std::uint64_t kShuffleStream = 0x04;
constexpr std::uint64_t kSpreadStream = 0x05;
constexpr std::uint64_t kMapStream = 0x06;

constexpr double kCruiseSpeedMps = 0.5;
constexpr double kPoseRateHz = 10.0;

const char* kPrepCreated = "2025-05-12T09:00:00Z";
const char* kPrepModified = "2025-05-20T10:00:00Z";
const char* kCampaignStart = "2025-06-02T08:00:00Z";
constexpr std::int64_t kRunSpacingSeconds = 30;

struct Creator {
  const char* name;
  const char* orcid;
};
constexpr Creator kCreators[] = {
    {"Dana Vogel", "0000-0001-2345-6789"},
    {"Priya Raman", "0000-0003-9876-5433"},
};

void write_file(const fs::path& p, const std::string& bytes) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string config_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "c_%04d", index);
  return buf;
}

std::string run_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "run_%03d", index);
  return buf;
}

std::string map_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "map_%03d", index);
  return buf;
}

struct GridCoord {
  int map, path, density, radius;
};

GridCoord coord_of(const HarnessConfig& cfg, int index) {
  int r = static_cast<int>(cfg.radii_m.size());
  int d = static_cast<int>(cfg.densities.size());
  GridCoord c{};
  c.radius = index % r;
  index /= r;
  c.density = index % d;
  index /= d;
  c.path = index % cfg.paths_per_map;
  c.map = index / cfg.paths_per_map;
  return c;
}

struct PathSpec {
  double sx, sy, yaw, gx, gy;
};

PathSpec path_spec(const HarnessConfig& cfg, int map, int path) {
  auto s = SplitMix64::stream(cfg.seed, kPoseStream, map, path);
  PathSpec p{};
  p.sx = 2.0 + s.uniform() * 16.0;
  p.sy = 2.0 + s.uniform() * 16.0;
  p.yaw = s.uniform() * 6.283185307179586;
  p.gx = p.sx + cfg.path_length_m * std::cos(p.yaw);
  p.gy = p.sy + cfg.path_length_m * std::sin(p.yaw);
  return p;
}

std::string failure_message(FailureMode cause) {
  switch (cause) {
    case FailureMode::AlwaysFail:
      return "startup failed: spawn pose inside inflation radius";
    case FailureMode::FailKOfN:
      return "goal not reached: collision with obstacle";
    default:
      return "goal not reached";
  }
}

std::string mesh_stub(int map, SplitMix64& s) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
      << "<COLLADA version=\"1.4.1\">\n"
      << " <asset><up_axis>Z_UP</up_axis></asset>\n"
      << " <library_geometries>\n"
      << "  <geometry id=\"" << map_id(map) << "\" vertices=\""
      << 600 + s.below(400) << "\" faces=\"" << 900 + s.below(600)
      << "\"/>\n"
      << " </library_geometries>\n"
      << "</COLLADA>\n";
  return out.str();
}

std::string occupancy_stub(SplitMix64& s) {
  std::ostringstream out;
  out << "P2\n20 20\n100\n";
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      bool wall = x == 0 || y == 0 || x == 19 || y == 19 || s.below(12) == 0;
      out << (wall ? 100 : 0) << (x == 19 ? "" : " ");
    }
    out << "\n";
  }
  return out.str();
}

std::string world_stub(int map) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\"?>\n"
      << "<sdf version=\"1.9\">\n"
      << " <world name=\"" << map_id(map) << "\">\n"
      << "  <include><uri>model://" << map_id(map) << "</uri></include>\n"
      << "  <physics type=\"ode\"/>\n"
      << " </world>\n"
      << "</sdf>\n";
  return out.str();
}

std::string floorplan_stub(const HarnessConfig& cfg, int map) {
  auto s = SplitMix64::stream(cfg.seed, kMapStream, map);
  std::ostringstream fp;
  fp << "floorplan:\n"
     << "  name: " << map_id(map) << "\n"
     << "  width_m: 30.0\n"
     << "  height_m: 30.0\n"
     << "  rooms:\n";
  int rooms = 3 + static_cast<int>(s.below(3));
  for (int r = 0; r < rooms; ++r) {
    fp << "    - {name: room_" << r << ", x: " << format_fixed(1.0 + s.uniform() * 12.0, 1)
       << ", y: " << format_fixed(1.0 + s.uniform() * 12.0, 1)
       << ", w: " << format_fixed(4.0 + s.uniform() * 8.0, 1)
       << ", h: " << format_fixed(4.0 + s.uniform() * 8.0, 1) << "}\n";
  }
  std::string geometry = fp.str();

  std::ostringstream out;
  out << geometry << "metadata:\n"
      << "  attribution: " << kCreators[map % 2].orcid << "\n"
      << "  authors: [\"" << kCreators[0].name << "\", \"" << kCreators[1].name
      << "\"]\n"
      << "  created: " << kPrepCreated << "\n"
      << "  modified: " << kPrepModified << "\n"
      << "  size: " << geometry.size() << "\n"
      << "  license: CC-BY-4.0\n"
      << "  description: \""
      << (map == 0 ? "Indoor floor modeled after a university building level."
                   : "Synthetic indoor level with rooms and corridors.")
      << "\"\n"
      << "  map_location: \"Simulation Lab, Level " << map << "\"\n";
  return out.str();
}

std::string abstract_scenario_stub() {
  return
      "scenario nav_to_pose:\n"
      "    robot: turtlebot4\n"
      "    do serial:\n"
      "        spawn_robot(pose: ext_start_pose)\n"
      "        record_bag(topics: [/odom, /amcl_pose, /scan])\n"
      "        nav_to_pose(goal: ext_goal_pose)\n"
      "        assert_distance(goal: ext_goal_pose, threshold_m: 0.25)\n";
}

std::string variation_stub(const HarnessConfig& cfg) {
  std::ostringstream out;
  out << "variation:\n"
      << "  scenario: scenario/nav_to_pose.osc\n"
      << "  parameters:\n"
      << "    path: {plugin: PathVariationRandom, paths_per_map: "
      << cfg.paths_per_map << ", length_m: " << format_double(cfg.path_length_m)
      << "}\n"
      << "    obstacles: {plugin: ObstacleVariation, densities_per_m: [";
  for (std::size_t i = 0; i < cfg.densities.size(); ++i)
    out << (i ? ", " : "") << format_double(cfg.densities[i]);
  out << "]}\n"
      << "    robot_radius: {plugin: ParameterVariationList, values_m: [";
  for (std::size_t i = 0; i < cfg.radii_m.size(); ++i)
    out << (i ? ", " : "") << format_double(cfg.radii_m[i]);
  out << "]}\n"
      << "  maps:\n";
  for (int m = 0; m < cfg.n_maps; ++m)
    out << "    - maps/" << map_id(m) << "/floorplan.fpm\n";
  out << "  n_runs: " << cfg.runs_per_config << "\n"
      << "metadata:\n"
      << "  attribution: " << kCreators[0].orcid << "\n"
      << "  modified: " << kPrepModified << "\n";
  return out.str();
}

std::string launch_stub() {
  return
      "# nav2 bringup for simulated single-goal navigation missions\n"
      "from launch import LaunchDescription\n"
      "\n"
      "def generate_launch_description():\n"
      "    return LaunchDescription([\n"
      "        # nav2_bringup with AMCL, MPPI controller and NavFn planner\n"
      "    ])\n";
}

std::string params_stub(const std::string& version, const std::string& modified,
                        double robot_radius) {
  std::ostringstream out;
  out << "version: \"" << version << "\"\n"
      << "modified: " << modified << "\n"
      << "amcl:\n"
      << "  alpha1: 0.2\n"
      << "  alpha2: 0.2\n"
      << "controller_server:\n"
      << "  controller_plugins: [\"MPPI\"]\n"
      << "planner_server:\n"
      << "  planner_plugins: [\"NavFn\"]\n"
      << "local_costmap:\n"
      << "  robot_radius: " << format_double(robot_radius) << "\n";
  return out.str();
}

std::string manifest_stub(const HarnessConfig& cfg) {
  std::ostringstream out;
  out << "metadata:\n"
      << "  title: " << cfg.title << "\n"
      << "  description: \"A synthetic mobile robot navigation dataset: "
         "single-goal missions across indoor maps with varied obstacle "
         "densities and robot radii.\"\n"
      << "  creators:\n";
  for (const auto& c : kCreators)
    out << "    - name: " << c.name << "\n      orcid: " << c.orcid << "\n";
  out << "  keywords: [\"robotics\", \"navigation\", \"ROS2\"]\n"
      << "  license: \"CC-BY-4.0\"\n"
      << "  dataset_iri: " << cfg.dataset_iri << "\n"
      << "publication:\n"
      << "  - zip:\n"
      << "      filename: \"{timestamp:%Y%m%d}_metadata.zip\"\n"
      << "      include_filter:\n"
      << "        - \"*.jsonld\"\n"
      << "        - \"*.json\"\n"
      << "  - zip:\n"
      << "      filename: \"{timestamp:%Y%m%d}_results.zip\"\n"
      << "      include_filter:\n"
      << "        - \"*.xml\"\n"
      << "        - \"*.csv\"\n"
      << "        - \"*.yaml\"\n"
      << "        - \"*.config\"\n"
      << "        - \"*.log\"\n"
      << "execution:\n"
      << "  n_runs: " << cfg.runs_per_config << "\n"
      << "  path_length_m: " << format_double(cfg.path_length_m) << "\n"
      << "  obstacle_densities_per_m: [";
  for (std::size_t i = 0; i < cfg.densities.size(); ++i)
    out << (i ? ", " : "") << format_double(cfg.densities[i]);
  out << "]\n  robot_radii_m: [";
  for (std::size_t i = 0; i < cfg.radii_m.size(); ++i)
    out << (i ? ", " : "") << format_double(cfg.radii_m[i]);
  out << "]\n"
      << "  agents:\n"
      << "    - {name: robovast, kind: software}\n"
      << "    - {name: turtlebot4, kind: robot}\n"
      << "    - {name: pose_extractor, kind: software}\n"
      << "    - {name: FloorPlanGeneration, kind: software}\n"
      << "    - {name: PathVariationRandom, kind: software}\n"
      << "    - {name: ObstacleVariation, kind: software}\n"
      << "    - {name: ParameterVariationList, kind: software}\n"
      << "  files:\n"
      << "    launch: config/nav2_launch.py\n"
      << "    parameters: config/nav2_params.yaml\n"
      << "    models:\n";
  for (int m = 0; m < cfg.n_maps; ++m)
    out << "      - maps/" << map_id(m) << "/floorplan.fpm\n";
  return out.str();
}

std::string test_xml(bool success, const std::string& duration,
                     const std::string& started, const std::string& message) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<testsuite name=\"nav_to_pose\" tests=\"1\" failures=\""
      << (success ? 0 : 1) << "\" errors=\"0\" time=\"" << duration
      << "\" timestamp=\"" << started << "\">\n"
      << " <testcase name=\"nav_to_pose\" classname=\"scenario_execution\" "
         "time=\""
      << duration << "\"";
  if (success) {
    out << "/>\n";
  } else {
    out << ">\n  <failure message=\"" << message << "\"/>\n </testcase>\n";
  }
  out << "</testsuite>\n";
  return out.str();
}

std::string run_metadata_yaml(double duration) {
  auto count = [duration](double hz) {
    return static_cast<long long>(std::llround(duration * hz));
  };
  std::ostringstream out;
  out << "system:\n"
      << "  hardware: simulated-x86_64-8core\n"
      << "  middleware: ROS 2 Humble\n"
      << "  runtime: Gazebo Harmonic / Ubuntu 22.04\n"
      << "bag:\n"
      << "  middleware_version: humble-2024.1\n"
      << "  messages:\n"
      << "    - type: nav_msgs/msg/Odometry\n      count: " << count(10.0)
      << "\n"
      << "    - type: geometry_msgs/msg/PoseWithCovarianceStamped\n      count: "
      << count(2.0) << "\n"
      << "    - type: sensor_msgs/msg/LaserScan\n      count: " << count(10.0)
      << "\n";
  return out.str();
}

std::string poses_csv(const PathSpec& path, double progress, double travel_time,
                      SplitMix64& noise) {
  std::ostringstream out;
  out << "t,gt_x,gt_y,gt_yaw,est_x,est_y,est_yaw\n";
  int steps = static_cast<int>(std::floor(progress * travel_time * kPoseRateHz));
  auto gauss = [&noise]() {
    double u1 = 1.0 - noise.uniform();
    double u2 = noise.uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586 * u2);
  };
  for (int i = 0; i <= steps; ++i) {
    double t = i / kPoseRateHz;
    double f = travel_time > 0 ? t / travel_time : 0.0;
    double gx = path.sx + f * (path.gx - path.sx);
    double gy = path.sy + f * (path.gy - path.sy);
    out << format_fixed(t, 1) << ',' << format_fixed(gx, 4) << ','
        << format_fixed(gy, 4) << ',' << format_fixed(path.yaw, 4) << ','
        << format_fixed(gx + 0.02 * gauss(), 4) << ','
        << format_fixed(gy + 0.02 * gauss(), 4) << ','
        << format_fixed(path.yaw + 0.01 * gauss(), 4) << '\n';
  }
  return out.str();
}

std::string bag_stub(SplitMix64& s) {
  std::string out = "#MCAP-STUB\n";
  std::size_t n = 1024 + s.below(2048);
  out.reserve(out.size() + n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(static_cast<char>(s.below(256)));
  return out;
}

std::string run_log(const std::string& started, const std::string& ended,
                    bool success, const std::string& duration,
                    const std::string& message) {
  std::ostringstream out;
  out << "[" << started << "] INFO scenario_execution: starting nav_to_pose\n"
      << "[" << started << "] INFO nav2: goal accepted\n";
  if (success) {
    out << "[" << ended << "] INFO scenario_execution: result=SUCCESS duration="
        << duration << "s\n";
  } else {
    out << "[" << ended << "] ERROR scenario_execution: result=FAILURE reason=\""
        << message << "\" duration=" << duration << "s\n";
  }
  return out.str();
}

void validate(const HarnessConfig& cfg) {
  if (cfg.n_maps < 1 || cfg.paths_per_map < 1 || cfg.runs_per_config < 1 ||
      cfg.densities.empty() || cfg.radii_m.empty())
    throw MalformedInput("harness counts must all be >= 1");
  if (cfg.path_length_m <= 0)
    throw MalformedInput("path_length_m must be positive");
  for (double d : cfg.densities)
    if (d < 0) throw MalformedInput("densities must be >= 0");
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  double scale = std::pow(10.0, decimals);
  double rounded = std::llround(value * scale) / scale;
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
  // snprintf honors the C locale set at startup; the toolkit never changes it
  return buf;
}

std::string format_double(double value) {
  for (int decimals = 1; decimals <= 9; ++decimals) {
    std::string s = format_fixed(value, decimals);
    if (std::abs(std::stod(s) - value) < 1e-12) return s;
  }
  return format_fixed(value, 9);
}

std::vector<std::vector<RunOutcome>> plan_outcomes(const HarnessConfig& cfg) {
  validate(cfg);
  int n_configs = cfg.n_configs();
  std::vector<std::vector<RunOutcome>> plan(
      n_configs, std::vector<RunOutcome>(cfg.runs_per_config));
  std::vector<bool> claimed(n_configs, false);

  for (int c = 0; c < n_configs; ++c) {
    GridCoord at = coord_of(cfg, c);
    for (const auto& rule : cfg.failure_profile) {
      if (rule.mode == FailureMode::SpreadTotal) continue;
      if (!rule.selector.matches(at.map, at.path, at.density, at.radius))
        continue;
      claimed[c] = true;
      auto& runs = plan[c];
      switch (rule.mode) {
        case FailureMode::AlwaysFail:
          for (auto& r : runs) r = {true, FailureMode::AlwaysFail};
          break;
        case FailureMode::FailKOfN: {
          std::vector<int> order(runs.size());
          std::iota(order.begin(), order.end(), 0);
          auto s = SplitMix64::stream(cfg.seed, kShuffleStream, c);
          for (std::size_t i = 0; i + 1 < order.size(); ++i)
            std::swap(order[i], order[i + s.below(order.size() - i)]);
          int k = std::min<int>(rule.k, static_cast<int>(runs.size()));
          for (int i = 0; i < k; ++i)
            runs[order[i]] = {true, FailureMode::FailKOfN};
          break;
        }
        case FailureMode::Probability: {
          for (std::size_t r = 0; r < runs.size(); ++r) {
            auto s = SplitMix64::stream(cfg.seed, kRunStream, c, r);
            if (s.uniform() < rule.probability)
              runs[r] = {true, FailureMode::Probability};
          }
          break;
        }
        case FailureMode::SpreadTotal:
          break;
      }
      break;  // first matching rule wins
    }
  }

  int spread_index = 0;
  for (const auto& rule : cfg.failure_profile) {
    if (rule.mode != FailureMode::SpreadTotal) continue;
    std::vector<std::pair<int, int>> slots;
    for (int c = 0; c < n_configs; ++c) {
      if (claimed[c]) continue;
      GridCoord at = coord_of(cfg, c);
      if (!rule.selector.matches(at.map, at.path, at.density, at.radius))
        continue;
      for (int r = 0; r < cfg.runs_per_config; ++r)
        if (!plan[c][r].fail) slots.emplace_back(c, r);
    }
    if (static_cast<std::size_t>(rule.total) > slots.size())
      throw MalformedInput("spread rule total exceeds the matching runs");
    auto s = SplitMix64::stream(cfg.seed, kSpreadStream, spread_index++);
    for (int i = 0; i < rule.total; ++i) {
      std::size_t j = i + s.below(slots.size() - i);
      std::swap(slots[i], slots[j]);
      plan[slots[i].first][slots[i].second] = {true, FailureMode::Probability};
    }
  }
  return plan;
}

GenerateSummary generate(const HarnessConfig& cfg, const fs::path& out_dir) {
  validate(cfg);
  if (fs::exists(out_dir) && !fs::is_empty(out_dir))
    throw OutputNotEmpty("output directory " + out_dir.string() +
                         " is not empty");
  fs::create_directories(out_dir);

  write_file(out_dir / "campaign.vast.yaml", manifest_stub(cfg));
  write_file(out_dir / "config" / "nav2_launch.py", launch_stub());
  write_file(out_dir / "config" / "nav2_params.yaml",
             params_stub("1.2.0", kPrepModified, cfg.radii_m.front()));
  write_file(out_dir / "scenario" / "nav_to_pose.osc", abstract_scenario_stub());
  write_file(out_dir / "scenario" / "variation.vast", variation_stub(cfg));

  for (int m = 0; m < cfg.n_maps; ++m) {
    fs::path dir = out_dir / "maps" / map_id(m);
    auto s = SplitMix64::stream(cfg.seed, kMapStream, m, 0xA);
    write_file(dir / "floorplan.fpm", floorplan_stub(cfg, m));
    write_file(dir / "mesh.dae", mesh_stub(m, s));
    write_file(dir / "occupancy.pgm", occupancy_stub(s));
    write_file(dir / "world.sdf", world_stub(m));
  }

  auto plan = plan_outcomes(cfg);
  const std::int64_t t0 = parse_instant_utc(kCampaignStart);
  const double travel_time = cfg.path_length_m / kCruiseSpeedMps;

  GenerateSummary summary;
  summary.n_configs = cfg.n_configs();
  summary.n_runs = cfg.n_runs();

  int global_run = 0;
  for (int c = 0; c < summary.n_configs; ++c) {
    GridCoord at = coord_of(cfg, c);
    fs::path cfg_dir = out_dir / "configs" / config_id(c);
    PathSpec path = path_spec(cfg, at.map, at.path);
    double density = cfg.densities[at.density];
    double radius = cfg.radii_m[at.radius];
    int n_obstacles =
        static_cast<int>(std::llround(density * cfg.path_length_m));

    auto obstacles = SplitMix64::stream(cfg.seed, kObstacleStream, at.map,
                                        at.path * 31 + at.density);
    std::ostringstream sc;
    sc << "scenario: nav_to_pose\n"
       << "map: maps/" << map_id(at.map) << "\n"
       << "occupancy_grid: maps/" << map_id(at.map) << "/occupancy.pgm\n"
       << "mesh: maps/" << map_id(at.map) << "/mesh.dae\n"
       << "world: maps/" << map_id(at.map) << "/world.sdf\n"
       << "start_pose: " << format_fixed(path.sx, 2) << " "
       << format_fixed(path.sy, 2) << " " << format_fixed(path.yaw, 2) << "\n"
       << "goal_pose: " << format_fixed(path.gx, 2) << " "
       << format_fixed(path.gy, 2) << " " << format_fixed(path.yaw, 2) << "\n"
       << "path_length_m: " << format_double(cfg.path_length_m) << "\n"
       << "n_obstacles: " << n_obstacles << "\n";
    for (int o = 0; o < n_obstacles; ++o) {
      double f = (o + 1.0) / (n_obstacles + 1.0);
      double lateral = obstacles.uniform() - 0.5;
      double ox = path.sx + f * (path.gx - path.sx) -
                  lateral * std::sin(path.yaw);
      double oy = path.sy + f * (path.gy - path.sy) +
                  lateral * std::cos(path.yaw);
      sc << "obstacle_" << (o + 1) << ": " << format_fixed(ox, 2) << " "
         << format_fixed(oy, 2) << "\n";
    }
    sc << "robot_radius_m: " << format_double(radius) << "\n"
       << "n_runs: " << cfg.runs_per_config << "\n"
       << "run_seed: " << SplitMix64::stream(cfg.seed, kRunStream, c).next()
       << "\n";
    write_file(cfg_dir / "scenario.config", sc.str());
    write_file(cfg_dir / "nav2_params.yaml",
               params_stub("1.2.0+" + config_id(c), kPrepModified, radius));

    for (int r = 0; r < cfg.runs_per_config; ++r, ++global_run) {
      const RunOutcome& outcome = plan[c][r];
      auto s = SplitMix64::stream(cfg.seed, kRunStream, c, r);
      double progress;
      if (!outcome.fail) {
        progress = 1.0;
      } else if (outcome.cause == FailureMode::AlwaysFail) {
        progress = 0.0;
      } else if (outcome.cause == FailureMode::FailKOfN) {
        progress = 0.4 + s.uniform() * 0.3;
      } else {
        progress = 0.3 + s.uniform() * 0.5;
      }
      double duration = outcome.fail
                            ? std::max(2.0, progress * travel_time +
                                                1.0 + s.uniform() * 2.0)
                            : travel_time + 1.0 + s.uniform() * 3.0;
      std::string duration_lex = format_fixed(duration, 3);
      std::string started =
          format_instant_utc(t0 + global_run * kRunSpacingSeconds);
      std::string ended = format_instant_utc(t0 + global_run * kRunSpacingSeconds +
                                             std::llround(duration));
      std::string message = outcome.fail ? failure_message(outcome.cause) : "";

      fs::path run_dir = cfg_dir / "runs" / run_id(r);
      write_file(run_dir / "test.xml",
                 test_xml(!outcome.fail, duration_lex, started, message));
      write_file(run_dir / "metadata.yaml", run_metadata_yaml(duration));
      auto noise = SplitMix64::stream(cfg.seed, kRunStream, c, r + 0x1000);
      write_file(run_dir / "postprocess" / "poses.csv",
                 poses_csv(path, progress, travel_time, noise));
      auto bag_rng = SplitMix64::stream(cfg.seed, kRunStream, c, r + 0x2000);
      write_file(run_dir / "rosbag" / "recording.mcap", bag_stub(bag_rng));
      write_file(run_dir / "logs" / "run.log",
                 run_log(started, ended, !outcome.fail, duration_lex, message));

      if (outcome.fail) ++summary.n_failed;
      summary.total_distance_m += progress * cfg.path_length_m;
    }
  }
  return summary;
}

HarnessConfig demo_profile() {
  HarnessConfig cfg;
  cfg.seed = 42;
  cfg.failure_profile = {
      {{4, 0, std::nullopt, std::nullopt}, FailureMode::AlwaysFail, 0, 0, 0},
      {{3, 0, 1, 0}, FailureMode::FailKOfN, 9, 0, 0},
      {{}, FailureMode::SpreadTotal, 0, 0, 66},
  };
  return cfg;
}

HarnessConfig paper_profile() {
  HarnessConfig cfg;
  cfg.seed = 2026;
  cfg.paths_per_map = 20;  // reaches 400 configurations over 5 maps
  cfg.failure_profile = {
      // right-most map: 8 configurations whose spawn pose always fails
      {{4, 0, std::nullopt, std::nullopt}, FailureMode::AlwaysFail, 0, 0, 0},
      {{4, 1, std::nullopt, std::nullopt}, FailureMode::AlwaysFail, 0, 0, 0},
      // two obstacle-collision stories on the second map from the right,
      // 19 failures per pair of 10-run configurations
      {{3, 0, 1, 0}, FailureMode::FailKOfN, 10, 0, 0},
      {{3, 0, 1, 1}, FailureMode::FailKOfN, 9, 0, 0},
      {{3, 1, 1, 0}, FailureMode::FailKOfN, 10, 0, 0},
      {{3, 1, 1, 1}, FailureMode::FailKOfN, 9, 0, 0},
      // remaining failures spread over the rest of the campaign
      {{}, FailureMode::SpreadTotal, 0, 0, 172},
  };
  return cfg;
}

}  // namespace fairprov

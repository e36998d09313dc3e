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

#include <doctest.h>

#include <filesystem>

#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace fairprov;

namespace fs = std::filesystem;

namespace {

HarnessConfig tiny_config() {
  HarnessConfig cfg;
  cfg.seed = 7;
  cfg.n_maps = 2;
  cfg.paths_per_map = 2;
  cfg.densities = {0.0, 0.2};
  cfg.radii_m = {0.175};
  cfg.runs_per_config = 2;
  cfg.failure_profile = {
      {{1, 0, std::nullopt, std::nullopt}, FailureMode::AlwaysFail, 0, 0, 0},
  };
  return cfg;
}

// byte compare of two directory trees
bool trees_identical(const fs::path& a, const fs::path& b) {
  std::vector<std::string> files_a, files_b;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file())
      files_a.push_back(fs::relative(e.path(), a).generic_string());
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file())
      files_b.push_back(fs::relative(e.path(), b).generic_string());
  std::sort(files_a.begin(), files_a.end());
  std::sort(files_b.begin(), files_b.end());
  if (files_a != files_b) return false;
  for (const auto& rel : files_a)
    if (test_util::read_file(a / rel) != test_util::read_file(b / rel))
      return false;
  return true;
}

}  // namespace

TEST_CASE("configuration counts follow the grid product") {
  HarnessConfig cfg;
  cfg.n_maps = 5;
  cfg.paths_per_map = 10;
  cfg.densities = {0.0, 0.2};
  cfg.radii_m = {0.175, 0.22};
  cfg.runs_per_config = 10;
  CHECK(cfg.n_configs() == 200);
  CHECK(cfg.n_runs() == 2000);

  test_util::SplitMix64 rng(17);
  for (int i = 0; i < 20; ++i) {
    HarnessConfig random;
    random.n_maps = 1 + static_cast<int>(rng.below(4));
    random.paths_per_map = 1 + static_cast<int>(rng.below(6));
    random.densities.assign(1 + rng.below(3), 0.1);
    random.radii_m.assign(1 + rng.below(3), 0.2);
    random.runs_per_config = 1 + static_cast<int>(rng.below(5));
    CHECK(random.n_runs() == random.n_configs() * random.runs_per_config);
    auto plan = plan_outcomes(random);
    CHECK(plan.size() == static_cast<std::size_t>(random.n_configs()));
  }
}

TEST_CASE("always-fail rules fail every selected run") {
  HarnessConfig cfg = tiny_config();
  // map 1, path 0 covers |densities| x |radii| = 2 configs x 2 runs
  auto plan = plan_outcomes(cfg);
  int failed = 0;
  for (const auto& runs : plan)
    for (const auto& outcome : runs)
      if (outcome.fail) ++failed;
  CHECK(failed == 4);
}

TEST_CASE("two fail-19-of-20 configurations fail 38 runs") {
  HarnessConfig cfg;
  cfg.seed = 99;
  cfg.n_maps = 1;
  cfg.paths_per_map = 2;
  cfg.densities = {0.2};
  cfg.radii_m = {0.175};
  cfg.runs_per_config = 20;
  cfg.failure_profile = {
      {{0, 0, std::nullopt, std::nullopt}, FailureMode::FailKOfN, 19, 0, 0},
      {{0, 1, std::nullopt, std::nullopt}, FailureMode::FailKOfN, 19, 0, 0},
  };
  auto plan = plan_outcomes(cfg);
  int failed = 0;
  for (const auto& runs : plan)
    for (const auto& outcome : runs)
      if (outcome.fail) ++failed;
  CHECK(failed == 38);
}

TEST_CASE("spread rules hit their exact total") {
  HarnessConfig cfg = tiny_config();
  cfg.failure_profile.push_back({{}, FailureMode::SpreadTotal, 0, 0, 5});
  auto plan = plan_outcomes(cfg);
  int failed = 0;
  for (const auto& runs : plan)
    for (const auto& outcome : runs)
      if (outcome.fail) ++failed;
  CHECK(failed == 4 + 5);
}

TEST_CASE("paper profile plans 400 configurations and 290 failures") {
  HarnessConfig cfg = paper_profile();
  CHECK(cfg.n_configs() == 400);
  CHECK(cfg.n_runs() == 4000);
  auto plan = plan_outcomes(cfg);
  int failed = 0;
  for (const auto& runs : plan)
    for (const auto& outcome : runs)
      if (outcome.fail) ++failed;
  CHECK(failed == 290);

  // the always-fail block: map 4, paths 0-1 = 8 configurations, 80 runs
  int always = 0;
  for (int c = 0; c < cfg.n_configs(); ++c)
    for (const auto& outcome : plan[c])
      if (outcome.fail && outcome.cause == FailureMode::AlwaysFail) ++always;
  CHECK(always == 80);

  // the two collision stories: 19 failures per pair
  int collisions = 0;
  for (const auto& runs : plan)
    for (const auto& outcome : runs)
      if (outcome.fail && outcome.cause == FailureMode::FailKOfN) ++collisions;
  CHECK(collisions == 38);
}

TEST_CASE("generate writes the expected tree and summary") {
  test_util::TempDir tmp("harness");
  HarnessConfig cfg = tiny_config();
  auto summary = generate(cfg, tmp.path() / "ds");
  CHECK(summary.n_configs == 8);
  CHECK(summary.n_runs == 16);
  CHECK(summary.n_failed == 4);
  CHECK(summary.total_distance_m > 0);

  CHECK(fs::exists(tmp.path() / "ds" / "campaign.vast.yaml"));
  CHECK(fs::exists(tmp.path() / "ds" / "scenario" / "nav_to_pose.osc"));
  CHECK(fs::exists(tmp.path() / "ds" / "scenario" / "variation.vast"));
  CHECK(fs::exists(tmp.path() / "ds" / "maps" / "map_000" / "floorplan.fpm"));
  CHECK(fs::exists(tmp.path() / "ds" / "maps" / "map_001" / "occupancy.pgm"));
  CHECK(fs::exists(tmp.path() / "ds" / "config" / "nav2_params.yaml"));
  CHECK(fs::exists(tmp.path() / "ds" / "configs" / "c_0000" / "scenario.config"));
  CHECK(fs::exists(tmp.path() / "ds" / "configs" / "c_0007" / "runs" /
                   "run_001" / "test.xml"));
  CHECK(fs::exists(tmp.path() / "ds" / "configs" / "c_0000" / "runs" /
                   "run_000" / "postprocess" / "poses.csv"));
  CHECK(fs::exists(tmp.path() / "ds" / "configs" / "c_0000" / "runs" /
                   "run_000" / "rosbag" / "recording.mcap"));

  // outcome bookkeeping: test.xml failures match the summary
  auto tallies = oracles::tally_tree(tmp.path() / "ds");
  CHECK(oracles::total_failures(tallies) == summary.n_failed);
  int runs = 0;
  for (const auto& [config, tally] : tallies) runs += tally.runs;
  CHECK(runs == summary.n_runs);
}

TEST_CASE("generation is deterministic") {
  test_util::TempDir tmp("harness_det");
  HarnessConfig cfg = tiny_config();
  auto s1 = generate(cfg, tmp.path() / "a");
  auto s2 = generate(cfg, tmp.path() / "b");
  CHECK(s1.n_failed == s2.n_failed);
  CHECK(trees_identical(tmp.path() / "a", tmp.path() / "b"));
}

TEST_CASE("generate refuses a non-empty output directory") {
  test_util::TempDir tmp("harness_nonempty");
  test_util::write_file(tmp.path() / "ds" / "stale.txt", "old");
  CHECK_THROWS_AS(generate(tiny_config(), tmp.path() / "ds"), OutputNotEmpty);
}

TEST_CASE("format_double renders the shortest faithful form") {
  CHECK(format_double(0.175) == "0.175");
  CHECK(format_double(0.22) == "0.22");
  CHECK(format_double(10.0) == "10.0");
  CHECK(format_double(0.0) == "0.0");
}

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

#include "fairprov/capture.hpp"

#include <doctest.h>

#include "fairprov/harness.hpp"
#include "support/test_util.hpp"

using namespace fairprov;

namespace {

const char* kManifestFixture = R"(metadata:
  title: Navigation Dataset
  description: "A navigation dataset that covers simulated missions."
  creators:
    - name: Dana Vogel
      orcid: 0000-0001-2345-6789
  keywords: ["robotics", "navigation", "ROS2"]
  license: "CC-BY-4.0"
  dataset_iri: https://purl.org/robovast/nav-demo
publication:
  - zip:
      filename: "{timestamp:%Y%m%d}_metadata.zip"
      include_filter:
        - "*.json"
)";

struct SmallTree {
  test_util::TempDir tmp{"capture"};
  std::filesystem::path root;
  CampaignManifest manifest;

  SmallTree() {
    HarnessConfig cfg;
    cfg.seed = 11;
    cfg.n_maps = 1;
    cfg.paths_per_map = 2;
    cfg.densities = {0.0};
    cfg.radii_m = {0.175};
    cfg.runs_per_config = 2;
    root = tmp.path() / "ds";
    generate(cfg, root);
    manifest = load_manifest(root / "campaign.vast.yaml");
  }
};

}  // namespace

TEST_CASE("parse_manifest reads the declared metadata") {
  auto manifest = parse_manifest(kManifestFixture);
  CHECK(manifest.title == "Navigation Dataset");
  CHECK(manifest.license == "CC-BY-4.0");
  CHECK(manifest.keywords ==
        std::vector<std::string>{"robotics", "navigation", "ROS2"});
  REQUIRE(manifest.creators.size() == 1);
  CHECK(manifest.creators[0].orcid == "0000-0001-2345-6789");
  CHECK(manifest.base().str() == "https://purl.org/robovast/nav-demo");
  REQUIRE(manifest.publication.size() == 1);
  CHECK(manifest.publication[0].filename_template ==
        "{timestamp:%Y%m%d}_metadata.zip");
  CHECK(manifest.publication[0].include_filter ==
        std::vector<std::string>{"*.json"});
  CHECK(manifest.warnings.empty());
}

TEST_CASE("parse_manifest reports missing required fields") {
  std::string no_license(kManifestFixture);
  auto pos = no_license.find("  license: \"CC-BY-4.0\"\n");
  no_license.erase(pos, std::string("  license: \"CC-BY-4.0\"\n").size());
  bool named = false;
  try {
    parse_manifest(no_license);
  } catch (const MissingRequiredField& e) {
    named = std::string(e.what()).find("license") != std::string::npos;
  }
  CHECK(named);
  CHECK_THROWS_AS(parse_manifest("metadata: [not, a, map]"), Error);
  CHECK_THROWS_AS(parse_manifest(": ["), MalformedManifest);
}

TEST_CASE("parse_manifest keeps unknown keys as warnings") {
  std::string extra = std::string(kManifestFixture) + "custom_block:\n  x: 1\n";
  auto manifest = parse_manifest(extra);
  REQUIRE(manifest.warnings.size() == 1);
  CHECK(manifest.warnings[0].find("custom_block") != std::string::npos);
}

TEST_CASE("parse_test_report extracts outcome and timing") {
  const char* passing = R"(<?xml version="1.0" encoding="UTF-8"?>
<testsuite name="nav_to_pose" tests="1" failures="0" errors="0" time="41.2" timestamp="2025-06-02T08:00:00Z">
 <testcase name="nav_to_pose" classname="scenario_execution" time="41.2"/>
</testsuite>
)";
  auto report = parse_test_report(passing);
  CHECK(report.success);
  CHECK(report.duration_s == doctest::Approx(41.2));
  CHECK(report.started == "2025-06-02T08:00:00Z");
  CHECK(report.ended == "2025-06-02T08:00:41Z");

  const char* failing = R"(<testsuite name="nav_to_pose" tests="1" failures="1" errors="0" time="12.0" timestamp="2025-06-02T08:10:00Z">
 <testcase name="nav_to_pose" classname="scenario_execution" time="12.0">
  <failure message="goal not reached"/>
 </testcase>
</testsuite>
)";
  auto failed = parse_test_report(failing);
  CHECK_FALSE(failed.success);
  CHECK(failed.failure_message == "goal not reached");

  const char* no_timestamp = R"(<testsuite name="x" tests="1" failures="0" time="1.0"/>)";
  CHECK_THROWS_AS(parse_test_report(no_timestamp), MissingTimestamp);
  CHECK_THROWS_AS(parse_test_report("<testsuite"), MalformedReport);
  CHECK_THROWS_AS(parse_test_report("<other/>"), MalformedReport);
}

TEST_CASE("scan_campaign walks the standardized tree") {
  SmallTree tree;
  auto scan = scan_campaign(tree.root, tree.manifest);
  CHECK(scan.violations.empty());
  CHECK(scan.maps.size() == 1);
  CHECK(scan.configs.size() == 2);
  CHECK(scan.runs.size() == 4);
  CHECK(scan.abstract_scenario.str() == "scenario/nav_to_pose.osc");
  CHECK(scan.variation_file.str() == "scenario/variation.vast");
  CHECK(scan.orig_params_version == "1.2.0");

  const auto& config = scan.configs[0];
  CHECK(config.n_obstacles == 0);
  CHECK(config.robot_radius_m == "0.175");
  CHECK(config.n_runs == 2);
  CHECK(config.map_dir == "maps/map_000");
  CHECK(config.params_version == "1.2.0+c_0000");

  const auto& run = scan.runs[0];
  CHECK(run.dir.str() == "configs/c_0000/runs/run_000");
  CHECK(run.system.middleware == "ROS 2 Humble");
  CHECK(run.bag.messages.size() == 3);
  int reports = 0;
  for (const auto& artifact : run.artifacts)
    if (artifact.kind == ArtifactKind::TestReportFile) ++reports;
  CHECK(reports == 1);
  for (const auto& artifact : run.artifacts)
    CHECK(std::filesystem::exists(tree.root / artifact.path.str()));

  const auto& meta = scan.maps[0].meta;
  CHECK(meta.attribution_orcid == "0000-0001-2345-6789");
  CHECK_FALSE(meta.description.empty());
  CHECK_FALSE(meta.map_location.empty());
  CHECK(meta.size > 0);
}

TEST_CASE("scan accumulates violations instead of failing fast") {
  SmallTree tree;
  std::filesystem::remove(tree.root / "configs" / "c_0000" / "runs" /
                          "run_000" / "test.xml");
  auto scan = scan_campaign(tree.root, tree.manifest);
  REQUIRE(scan.violations.size() == 1);
  CHECK(scan.violations[0].path == "configs/c_0000/runs/run_000");
  CHECK(scan.runs.size() == 3);  // the other runs are unaffected
  CHECK(scan.configs.size() == 2);
}

TEST_CASE("a generated tree scans with zero violations") {
  test_util::TempDir tmp("capture_gen");
  HarnessConfig cfg;
  cfg.seed = 5;
  cfg.n_maps = 2;
  cfg.paths_per_map = 1;
  cfg.densities = {0.0, 0.2};
  cfg.radii_m = {0.175, 0.22};
  cfg.runs_per_config = 2;
  generate(cfg, tmp.path() / "ds");
  auto manifest = load_manifest(tmp.path() / "ds" / "campaign.vast.yaml");
  auto scan = scan_campaign(tmp.path() / "ds", manifest);
  CHECK(scan.violations.empty());
  CHECK(scan.configs.size() == 8);
  CHECK(scan.runs.size() == 16);
}

TEST_CASE("run_collectors emits one fragment per unit and isolates failures") {
  SmallTree tree;
  auto scan = scan_campaign(tree.root, tree.manifest);
  const auto& v = Vocab::get();

  CollectorRegistry registry;
  registry.add({"outcome_only", CollectorLevel::Run,
                [&v](const CollectorContext& ctx) {
                  LinkedDocument doc;
                  doc.node(run_identifier(*ctx.base, ctx.run->dir))
                      .add(v.rv_success,
                           Value(LiteralValue::boolean(ctx.run->success)));
                  return doc;
                }});
  registry.add({"broken", CollectorLevel::Campaign,
                [](const CollectorContext&) -> LinkedDocument {
                  throw std::runtime_error("collector exploded");
                }});
  CHECK_THROWS_AS(
      registry.add({"broken", CollectorLevel::Campaign, nullptr}),
      DuplicatePlugin);

  auto output =
      run_collectors(registry, tree.manifest, scan, tree.manifest.base());
  CHECK(output.fragments.size() == 4);  // one per run
  for (const auto& fragment : output.fragments) {
    REQUIRE(fragment.nodes.size() == 1);
    CHECK(fragment.nodes.begin()->second.get(v.rv_success) != nullptr);
  }
  REQUIRE(output.failures.size() == 1);
  CHECK(output.failures[0].plugin == "broken");
  CHECK(output.failures[0].cause.find("exploded") != std::string::npos);
}

TEST_CASE("builtin collectors cover all three metadata levels") {
  SmallTree tree;
  auto scan = scan_campaign(tree.root, tree.manifest);
  auto output = run_collectors(CollectorRegistry::builtin(), tree.manifest,
                               scan, tree.manifest.base());
  CHECK(output.failures.empty());

  const auto& v = Vocab::get();
  Iri campaign = mint_from_path(tree.manifest.base(), RelPath::parse("campaign"));
  bool campaign_level = false, config_level = false, run_level = false;
  for (const auto& fragment : output.fragments) {
    for (const auto& [id, node] : fragment.nodes) {
      if (id == campaign && node.get(v.rv_n_runs)) {
        campaign_level = true;
        CHECK(node.get(v.prov_startedAtTime) != nullptr);
        auto planned = node.first(v.rv_n_runs);
        REQUIRE(planned.has_value());
        CHECK(std::get<LiteralValue>(*planned).lexical == "4");
      }
      if (id.str().ends_with("scenario.config") && node.get(v.rv_n_obstacles))
        config_level = true;
      if (id.str().ends_with("run_000") && node.get(v.rv_success))
        run_level = true;
    }
  }
  CHECK(campaign_level);
  CHECK(config_level);
  CHECK(run_level);
}

TEST_CASE("agent IRIs default to the dataset base") {
  BaseIri base("https://purl.org/ds");
  AgentSpec robot{"turtlebot4", "robot", std::nullopt};
  CHECK(agent_iri(base, robot).str() == "https://purl.org/ds/agents/turtlebot4");
  AgentSpec configured{"robovast", "software",
                       std::string("https://purl.org/robovast")};
  CHECK(agent_iri(base, configured).str() == "https://purl.org/robovast");
}

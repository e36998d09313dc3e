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

#include "fairprov/consolidate.hpp"

#include <doctest.h>

#include "fairprov/harness.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace fairprov;

namespace {

struct Campaign {
  test_util::TempDir tmp{"consolidate"};
  std::filesystem::path root;
  CampaignManifest manifest;
  ScanResult scan;
  LinkedDocument doc;

  explicit Campaign(int maps = 2, int paths = 2, int runs = 2) {
    HarnessConfig cfg;
    cfg.seed = 23;
    cfg.n_maps = maps;
    cfg.paths_per_map = paths;
    cfg.densities = {0.0, 0.2};
    cfg.radii_m = {0.175};
    cfg.runs_per_config = runs;
    root = tmp.path() / "ds";
    generate(cfg, root);
    manifest = load_manifest(root / "campaign.vast.yaml");
    scan = scan_campaign(root, manifest);
    auto collected = run_collectors(CollectorRegistry::builtin(), manifest,
                                    scan, manifest.base());
    doc = build_graph(manifest, scan, std::move(collected.fragments));
  }
};

std::size_t count_violations(const GraphReport& report, const char* rule) {
  std::size_t n = 0;
  for (const auto& violation : report.violations)
    if (violation.rule == rule) ++n;
  return n;
}

}  // namespace

TEST_CASE("the consolidated demo graph is structurally clean") {
  Campaign campaign;  // 2 maps x 2 paths x 2 densities = 8 configs, 16 runs
  const auto& v = Vocab::get();

  auto report = validate_graph(campaign.doc);
  for (const auto& violation : report.violations)
    MESSAGE(violation.rule, " ", violation.node.str(), " ", violation.message);
  CHECK(report.violations.empty());

  CHECK(report.node_counts_by_type.at(v.rv_TestExecution) == 16);
  CHECK(report.node_counts_by_type.at(v.smm_ConcreteScenario) == 8);
  CHECK(report.node_counts_by_type.at(v.rv_ConfigurationLoad) == 8);
  CHECK(report.node_counts_by_type.at(v.smm_EnvironmentModel) == 2);
  CHECK(report.node_counts_by_type.at(v.dcat_Dataset) == 1);

  // every execution uses exactly one concrete scenario and is associated
  // with the robot agent
  Iri robot("https://purl.org/robovast/nav-demo/agents/turtlebot4");
  for (const auto& [id, node] : campaign.doc.nodes) {
    if (!node.has_type(v.rv_TestExecution)) continue;
    std::size_t scenarios = 0;
    for (const auto& value : *node.get(v.prov_used)) {
      const auto* target = campaign.doc.find(std::get<Iri>(value));
      if (target->has_type(v.smm_ConcreteScenario)) ++scenarios;
    }
    CHECK(scenarios == 1);
    bool with_robot = false;
    for (const auto& value : *node.get(v.prov_wasAssociatedWith))
      if (std::get<Iri>(value) == robot) with_robot = true;
    CHECK(with_robot);
  }
}

TEST_CASE("one load_config per configuration regardless of run count") {
  Campaign campaign(1, 2, 3);  // 4 configs x 3 runs
  const auto& v = Vocab::get();
  std::size_t loads = 0;
  for (const auto& [id, node] : campaign.doc.nodes)
    if (node.has_type(v.rv_ConfigurationLoad)) ++loads;
  CHECK(loads == 4);
}

TEST_CASE("triple count equals a naive enumeration") {
  Campaign campaign(1, 1, 2);
  std::size_t naive = 0;
  for (const auto& [id, node] : campaign.doc.nodes) {
    naive += node.types.size();
    for (const auto& [pred, values] : node.properties) naive += values.size();
  }
  auto report = stats(campaign.doc);
  CHECK(report.triple_count == naive);
  CHECK(report.triple_count == to_triples(campaign.doc).size());

  auto again = stats(campaign.doc);
  CHECK(again.triple_count == report.triple_count);
  CHECK(again.node_counts_by_type == report.node_counts_by_type);
}

TEST_CASE("stats of an empty document are all zero") {
  auto report = stats(LinkedDocument{});
  CHECK(report.node_count == 0);
  CHECK(report.triple_count == 0);
  CHECK(report.node_counts_by_type.empty());
}

TEST_CASE("consolidation is deterministic") {
  Campaign a(1, 2, 2);
  Campaign b(1, 2, 2);
  // same harness seed, independently scanned and built
  CHECK(serialize(a.doc) == serialize(b.doc));
}

TEST_CASE("seeded mutations produce violations naming the node") {
  Campaign campaign(1, 1, 2);  // 2 configs, 4 runs
  const auto& v = Vocab::get();
  std::string base = "https://purl.org/robovast/nav-demo";

  SUBCASE("dropping wasGeneratedBy from a derived CSV") {
    Iri csv(base + "/configs/c_0000/runs/run_000/postprocess/poses.csv");
    auto doc = campaign.doc;
    doc.find(csv)->remove(v.prov_wasGeneratedBy);
    auto report = validate_graph(doc);
    bool named = false;
    for (const auto& violation : report.violations)
      if (violation.rule == rules::kDerivationGeneration &&
          violation.node == csv)
        named = true;
    CHECK(named);
  }

  SUBCASE("dropping wasGeneratedBy from the test report breaks the chain") {
    Iri report_node(base + "/configs/c_0000/runs/run_000/test.xml");
    auto doc = campaign.doc;
    doc.find(report_node)->remove(v.prov_wasGeneratedBy);
    auto report = validate_graph(doc);
    bool named = false;
    for (const auto& violation : report.violations)
      if (violation.rule == rules::kProvenanceChain &&
          violation.node == report_node)
        named = true;
    CHECK(named);
  }

  SUBCASE("dropping wasAssociatedWith from an execution") {
    Iri run(base + "/configs/c_0000/runs/run_001");
    auto doc = campaign.doc;
    doc.find(run)->remove(v.prov_wasAssociatedWith);
    auto report = validate_graph(doc);
    bool named = false;
    for (const auto& violation : report.violations)
      if (violation.rule == rules::kMultiplicity && violation.node == run)
        named = true;
    CHECK(named);
  }

  SUBCASE("a node outside the dataset base") {
    auto doc = campaign.doc;
    Iri old_id(base + "/configs/c_0000/runs/run_000/logs/run.log");
    Iri new_id("https://elsewhere.example/run.log");
    NodeObject moved = *doc.find(old_id);
    moved.id = new_id;
    doc.nodes.erase(old_id);
    doc.nodes.emplace(new_id, std::move(moved));
    for (auto& [id, node] : doc.nodes)
      for (auto& [pred, values] : node.properties)
        for (auto& value : values)
          if (is_ref(value) && std::get<Iri>(value) == old_id) value = new_id;
    auto report = validate_graph(doc);
    bool named = false;
    for (const auto& violation : report.violations)
      if (violation.rule == rules::kResidency && violation.node == new_id)
        named = true;
    CHECK(named);
  }

  SUBCASE("a duplicate dataset identifier") {
    auto doc = campaign.doc;
    auto& dataset = *doc.find(Iri(base));
    dataset.add(v.dct_identifier,
                Value(LiteralValue::str("https://doi.org/10.1/a")));
    dataset.add(v.dct_identifier,
                Value(LiteralValue::str("https://doi.org/10.1/b")));
    auto report = validate_graph(doc);
    bool named = false;
    for (const auto& violation : report.violations)
      if (violation.rule == rules::kFunctional && violation.node == Iri(base))
        named = true;
    CHECK(named);
  }

  SUBCASE("a missing load_config activity") {
    auto doc = campaign.doc;
    Iri load(base + "/configs/c_0000/load_config");
    doc.nodes.erase(load);
    auto report = validate_graph(doc);
    bool named = false;
    for (const auto& violation : report.violations)
      if (violation.rule == rules::kLoadConfig &&
          violation.node ==
              Iri(base + "/configs/c_0000/nav2_params.yaml"))
        named = true;
    CHECK(named);
  }

  SUBCASE("an orphan artifact with no provenance") {
    auto doc = campaign.doc;
    Iri orphan(base + "/configs/c_0000/runs/run_000/postprocess/orphan.csv");
    auto& node = doc.node(orphan);
    node.add_type(v.prov_Entity);
    node.add(v.rv_relativePath,
             Value(LiteralValue::str(
                 "configs/c_0000/runs/run_000/postprocess/orphan.csv")));
    auto report = validate_graph(doc);
    bool named = false;
    for (const auto& violation : report.violations)
      if (violation.rule == rules::kProvenanceChain && violation.node == orphan)
        named = true;
    CHECK(named);
  }
}

TEST_CASE("conflicting fragments raise ConsolidationConflict") {
  Campaign campaign(1, 1, 1);
  const auto& v = Vocab::get();
  Iri run("https://purl.org/robovast/nav-demo/configs/c_0000/runs/run_000");
  LinkedDocument contradiction;
  contradiction.node(run).add(v.rv_success, Value(LiteralValue::boolean(false)));
  std::vector<LinkedDocument> fragments;
  auto collected = run_collectors(CollectorRegistry::builtin(),
                                  campaign.manifest, campaign.scan,
                                  campaign.manifest.base());
  fragments = std::move(collected.fragments);
  fragments.push_back(std::move(contradiction));
  CHECK_THROWS_AS(
      build_graph(campaign.manifest, campaign.scan, std::move(fragments)),
      ConsolidationConflict);
}

TEST_CASE("executions can be traced to the scenario's input files") {
  Campaign campaign(1, 1, 1);
  auto triples = to_triples(campaign.doc);
  std::string base = "https://purl.org/robovast/nav-demo";
  std::string run = base + "/configs/c_0000/runs/run_000";

  auto closure = oracles::input_closure(triples, run);
  CHECK(!closure.empty());
  // the concrete scenario itself, its referenced environment artifacts and
  // the root inputs are all reachable
  CHECK(closure.count(base + "/configs/c_0000/scenario.config"));
  CHECK(closure.count(base + "/maps/map_000/occupancy.pgm"));
  CHECK(closure.count(base + "/maps/map_000/world.sdf"));
  CHECK(closure.count(base + "/scenario/variation.vast"));
  CHECK(closure.count(base + "/scenario/nav_to_pose.osc"));
  CHECK(closure.count(base + "/maps/map_000/floorplan.fpm"));
  CHECK(closure.count(base + "/config/nav2_params.yaml"));
}

TEST_CASE("graph validation flags literal objects on reference predicates") {
  Campaign campaign(1, 1, 1);
  const auto& v = Vocab::get();
  auto doc = campaign.doc;
  Iri run("https://purl.org/robovast/nav-demo/configs/c_0000/runs/run_000");
  doc.find(run)->add(v.prov_used, Value(LiteralValue::str("not-a-node")));
  auto report = validate_graph(doc);
  CHECK(count_violations(report, rules::kTypeDiscipline) >= 1);
}

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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairprov/identity.hpp"
#include "fairprov/ldgraph.hpp"

namespace fairprov {

struct Creator {
  std::string name;
  std::string orcid;
};

struct DistributionSpec {
  std::string filename_template;  // may contain one {timestamp:<format>}
  std::vector<std::string> include_filter;
};

struct AgentSpec {
  std::string name;
  std::string kind;  // "software" | "robot"
  std::optional<std::string> iri;
};

struct ExecutionSpec {
  int runs_per_config = 1;
  std::string path_length_m;
  std::vector<std::string> densities_per_m;
  std::vector<std::string> radii_m;
  std::vector<AgentSpec> agents;
  std::string launch_file;
  std::string parameter_file;
  std::vector<std::string> model_files;
};

struct CampaignManifest {
  std::string title;
  std::string description;
  std::string license;
  std::vector<Creator> creators;
  std::vector<std::string> keywords;
  std::optional<BaseIri> dataset_iri;
  std::vector<DistributionSpec> publication;
  ExecutionSpec execution;
  std::vector<std::string> warnings;  // unknown keys, preserved not fatal

  const BaseIri& base() const { return *dataset_iri; }
};

CampaignManifest parse_manifest(const std::string& bytes);
CampaignManifest load_manifest(const std::filesystem::path& file);

// IRI of a declared agent: the configured PURL, or <base>/agents/<name>.
Iri agent_iri(const BaseIri& base, const AgentSpec& agent);

struct TestReport {
  bool success = false;
  double duration_s = 0;
  std::string duration_lex;
  std::string started;  // normalized UTC Z
  std::string ended;
  std::string failure_message;
};

TestReport parse_test_report(const std::string& bytes);

struct Pose {
  std::string x, y, yaw;  // lexical decimals as written in scenario.config
};

struct ConfigRecord {
  RelPath dir;            // configs/c_0000
  RelPath scenario_file;  // .../scenario.config
  RelPath params_file;    // .../nav2_params.yaml
  std::string params_version;
  std::string params_modified;
  Pose start_pose, goal_pose;
  std::vector<Pose> obstacles;
  int n_obstacles = 0;
  std::string robot_radius_m;
  std::string path_length_m;
  int n_runs = 0;
  std::string map_dir;  // maps/map_000
  std::string grid_ref, mesh_ref, world_ref;
};

enum class ArtifactKind { Bag, Log, TestReportFile, Config, Csv, Video, Other };

struct ArtifactEntry {
  RelPath path;
  ArtifactKind kind = ArtifactKind::Other;
  std::uint64_t size = 0;
};

struct SystemInfo {
  std::string hardware, middleware, runtime;
};

struct MessageStat {
  std::string type;
  std::int64_t count = 0;
};

struct BagMeta {
  std::string middleware_version;
  std::vector<MessageStat> messages;
};

struct RunRecord {
  RelPath dir;  // configs/c_0000/runs/run_000
  RelPath config_dir;
  bool success = false;
  double duration_s = 0;
  std::string duration_lex;
  std::string started, ended;
  SystemInfo system;
  BagMeta bag;
  std::vector<ArtifactEntry> artifacts;  // exactly one test-report entry
};

struct EnvironmentModelMeta {
  std::string attribution_orcid;
  std::vector<std::string> authors;
  std::string created, modified;
  std::uint64_t size = 0;
  std::string license, description, map_location;
};

struct MapRecord {
  RelPath dir;        // maps/map_000
  RelPath floorplan;  // .../floorplan.fpm
  EnvironmentModelMeta meta;
  std::vector<ArtifactEntry> artifacts;  // mesh, occupancy grid, world model
};

struct LayoutViolation {
  std::string path;
  std::string message;
};

struct ScanResult {
  std::vector<MapRecord> maps;
  std::vector<ConfigRecord> configs;
  std::vector<RunRecord> runs;
  RelPath abstract_scenario;
  RelPath variation_file;
  std::string variation_modified;
  std::string variation_attribution;
  std::string orig_params_version;
  std::string orig_params_modified;
  std::map<std::string, std::uint64_t> file_sizes;  // rel path -> bytes
  std::vector<LayoutViolation> violations;
};

// Walks the standardized results tree. Per-directory problems accumulate as
// LayoutViolations; the rest of the tree is still scanned.
ScanResult scan_campaign(const std::filesystem::path& results_root,
                         const CampaignManifest& manifest);

enum class CollectorLevel { Campaign, Configuration, Run, Postprocess };

struct CollectorContext {
  const CampaignManifest* manifest = nullptr;
  const ScanResult* scan = nullptr;
  const BaseIri* base = nullptr;
  const ConfigRecord* config = nullptr;  // Configuration level
  const RunRecord* run = nullptr;        // Run and Postprocess levels
};

struct CollectorPlugin {
  std::string name;
  CollectorLevel level = CollectorLevel::Campaign;
  std::function<LinkedDocument(const CollectorContext&)> collect;
};

class CollectorRegistry {
 public:
  void add(CollectorPlugin plugin);  // throws DuplicatePlugin
  const std::vector<CollectorPlugin>& plugins() const { return plugins_; }
  bool empty() const { return plugins_.empty(); }

  // The toolkit's standard set: campaign info, units, per-configuration
  // scenario parameters, per-run outcome/system/bag metadata, postprocess
  // derivation info.
  static CollectorRegistry builtin();

 private:
  std::vector<CollectorPlugin> plugins_;
};

struct PluginFailure {
  std::string plugin;
  std::string cause;
};

struct CollectOutput {
  std::vector<LinkedDocument> fragments;
  std::vector<PluginFailure> failures;
};

// Runs each plugin at its level; a throwing plugin is recorded and isolated.
CollectOutput run_collectors(const CollectorRegistry& registry,
                             const CampaignManifest& manifest,
                             const ScanResult& scan, const BaseIri& base);

}  // namespace fairprov

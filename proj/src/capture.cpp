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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <yaml-cpp/yaml.h>

namespace fairprov {

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw MalformedInput("cannot read " + p.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string yaml_str(const YAML::Node& node) {
  return node.as<std::string>();
}

std::vector<std::string> sorted_entries(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir))
    names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw MalformedInput(std::string("bad integer for ") + what + ": \"" + s +
                         "\"");
  return v;
}

double parse_double(const std::string& s, const char* what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw MalformedInput(std::string("bad number for ") + what + ": \"" + s +
                         "\"");
  return v;
}

}  // namespace

CampaignManifest parse_manifest(const std::string& bytes) {
  YAML::Node root;
  try {
    root = YAML::Load(bytes);
  } catch (const YAML::Exception& e) {
    throw MalformedManifest(e.what());
  }
  if (!root.IsMap()) throw MalformedManifest("manifest must be a YAML map");

  CampaignManifest m;
  try {
    for (const auto& kv : root) {
      std::string key = yaml_str(kv.first);
      if (key != "metadata" && key != "publication" && key != "execution")
        m.warnings.push_back("unknown top-level key \"" + key + "\"");
    }

    YAML::Node meta = root["metadata"];
    if (!meta || !meta.IsMap())
      throw MissingRequiredField("metadata");
    for (const auto& kv : meta) {
      std::string key = yaml_str(kv.first);
      static const char* known[] = {"title",    "description", "creators",
                                    "keywords", "license",     "dataset_iri"};
      if (std::find_if(std::begin(known), std::end(known), [&key](const char* k) {
            return key == k;
          }) == std::end(known))
        m.warnings.push_back("unknown metadata key \"" + key + "\"");
    }
    if (!meta["title"]) throw MissingRequiredField("title");
    m.title = yaml_str(meta["title"]);
    if (!meta["license"] || yaml_str(meta["license"]).empty())
      throw MissingRequiredField("license");
    m.license = yaml_str(meta["license"]);
    if (!meta["dataset_iri"]) throw MissingRequiredField("dataset_iri");
    try {
      m.dataset_iri = BaseIri(yaml_str(meta["dataset_iri"]));
    } catch (const InvalidIri& e) {
      throw MalformedManifest(e.what());
    }
    if (!meta["creators"] || !meta["creators"].IsSequence() ||
        meta["creators"].size() == 0)
      throw MissingRequiredField("creators");
    for (const auto& c : meta["creators"]) {
      Creator creator;
      if (!c["name"]) throw MissingRequiredField("creators[].name");
      creator.name = yaml_str(c["name"]);
      if (!c["orcid"]) throw MissingRequiredField("creators[].orcid");
      creator.orcid = yaml_str(c["orcid"]);
      m.creators.push_back(std::move(creator));
    }
    if (meta["description"]) m.description = yaml_str(meta["description"]);
    if (meta["keywords"])
      for (const auto& k : meta["keywords"]) m.keywords.push_back(yaml_str(k));

    if (root["publication"]) {
      if (!root["publication"].IsSequence())
        throw MalformedManifest("publication must be a list");
      for (const auto& entry : root["publication"]) {
        YAML::Node zip = entry["zip"];
        if (!zip)
          throw MalformedManifest("publication entries must be zip blocks");
        DistributionSpec spec;
        if (!zip["filename"])
          throw MalformedManifest("zip block without filename");
        spec.filename_template = yaml_str(zip["filename"]);
        if (zip["include_filter"])
          for (const auto& f : zip["include_filter"])
            spec.include_filter.push_back(yaml_str(f));
        if (spec.include_filter.empty())
          throw MalformedManifest("zip block without include_filter");
        for (const auto& f : spec.include_filter)
          if (f.starts_with("/") || f.find("..") != std::string::npos)
            throw MalformedManifest("include_filter globs must be relative: " +
                                    f);
        m.publication.push_back(std::move(spec));
      }
    }

    if (root["execution"]) {
      YAML::Node ex = root["execution"];
      if (ex["n_runs"]) m.execution.runs_per_config = ex["n_runs"].as<int>();
      if (m.execution.runs_per_config < 1)
        throw MalformedManifest("execution.n_runs must be >= 1");
      if (ex["path_length_m"])
        m.execution.path_length_m = yaml_str(ex["path_length_m"]);
      if (ex["obstacle_densities_per_m"])
        for (const auto& d : ex["obstacle_densities_per_m"])
          m.execution.densities_per_m.push_back(yaml_str(d));
      if (ex["robot_radii_m"])
        for (const auto& r : ex["robot_radii_m"])
          m.execution.radii_m.push_back(yaml_str(r));
      if (ex["agents"])
        for (const auto& a : ex["agents"]) {
          AgentSpec spec;
          spec.name = yaml_str(a["name"]);
          spec.kind = a["kind"] ? yaml_str(a["kind"]) : "software";
          if (a["iri"]) spec.iri = yaml_str(a["iri"]);
          m.execution.agents.push_back(std::move(spec));
        }
      if (ex["files"]) {
        YAML::Node files = ex["files"];
        if (files["launch"]) m.execution.launch_file = yaml_str(files["launch"]);
        if (files["parameters"])
          m.execution.parameter_file = yaml_str(files["parameters"]);
        if (files["models"])
          for (const auto& f : files["models"])
            m.execution.model_files.push_back(yaml_str(f));
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const YAML::Exception& e) {
    throw MalformedManifest(e.what());
  }
  return m;
}

CampaignManifest load_manifest(const fs::path& file) {
  if (!fs::exists(file))
    throw MalformedManifest("manifest not found: " + file.string());
  return parse_manifest(slurp(file));
}

Iri agent_iri(const BaseIri& base, const AgentSpec& agent) {
  if (agent.iri) return Iri(*agent.iri);
  return mint_from_path(base, RelPath::parse("agents/" + agent.name));
}

TestReport parse_test_report(const std::string& bytes) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(bytes);
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw MalformedReport(e.what());
  }
  auto suite = tree.get_child_optional("testsuite");
  if (!suite) throw MalformedReport("missing <testsuite> element");

  auto failures = suite->get_optional<std::string>("<xmlattr>.failures");
  if (!failures) throw MalformedReport("testsuite has no failures attribute");
  auto time = suite->get_optional<std::string>("<xmlattr>.time");
  if (!time) throw MalformedReport("testsuite has no time attribute");
  auto timestamp = suite->get_optional<std::string>("<xmlattr>.timestamp");
  if (!timestamp) throw MissingTimestamp("testsuite has no timestamp attribute");

  TestReport report;
  report.success = parse_int(*failures, "failures") == 0;
  report.duration_lex = *time;
  report.duration_s = parse_double(*time, "time");
  if (report.duration_s < 0) throw MalformedReport("negative duration");
  try {
    std::int64_t started = parse_instant_utc(*timestamp);
    report.started = format_instant_utc(started);
    report.ended =
        format_instant_utc(started + std::llround(report.duration_s));
  } catch (const MalformedInput& e) {
    throw MalformedReport(e.what());
  }
  for (const auto& [name, testcase] : *suite) {
    if (name != "testcase") continue;
    if (auto failure = testcase.get_child_optional("failure"))
      report.failure_message =
          failure->get<std::string>("<xmlattr>.message", "");
  }
  return report;
}

namespace {

ArtifactKind classify_artifact(const RelPath& rel) {
  const auto& segs = rel.segments();
  const std::string& name = segs.back();
  bool in_bag_dir = segs.size() >= 2 && segs[segs.size() - 2] == "rosbag";
  if (name == "test.xml") return ArtifactKind::TestReportFile;
  if (in_bag_dir || name.ends_with(".mcap") || name.ends_with(".db3"))
    return ArtifactKind::Bag;
  if (name.ends_with(".log")) return ArtifactKind::Log;
  if (name.ends_with(".csv")) return ArtifactKind::Csv;
  if (name.ends_with(".mp4") || name.ends_with(".avi"))
    return ArtifactKind::Video;
  if (name.ends_with(".yaml") || name.ends_with(".config") ||
      name.ends_with(".py"))
    return ArtifactKind::Config;
  return ArtifactKind::Other;
}

struct KeyValueFile {
  std::map<std::string, std::string> values;
  const std::string& at(const std::string& key, const std::string& where) {
    auto it = values.find(key);
    if (it == values.end())
      throw MalformedInput("missing key \"" + key + "\" in " + where);
    return it->second;
  }
};

KeyValueFile parse_key_values(const std::string& bytes) {
  KeyValueFile out;
  std::istringstream in(bytes);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    while (!value.empty() && value.front() == ' ') value.erase(0, 1);
    while (!value.empty() && (value.back() == '\r' || value.back() == ' '))
      value.pop_back();
    out.values[key] = value;
  }
  return out;
}

Pose parse_pose(const std::string& text, const char* what) {
  std::istringstream in(text);
  Pose pose;
  if (!(in >> pose.x >> pose.y))
    throw MalformedInput(std::string("bad pose for ") + what + ": \"" + text +
                         "\"");
  in >> pose.yaw;  // obstacles carry x y only
  return pose;
}

void record_size(ScanResult& scan, const fs::path& root, const RelPath& rel) {
  scan.file_sizes[rel.str()] =
      static_cast<std::uint64_t>(fs::file_size(root / rel.str()));
}

void scan_maps(const fs::path& root, ScanResult& scan) {
  fs::path maps_dir = root / "maps";
  if (!fs::is_directory(maps_dir)) {
    scan.violations.push_back({"maps", "maps directory missing"});
    return;
  }
  for (const auto& name : sorted_entries(maps_dir)) {
    fs::path dir = maps_dir / name;
    if (!fs::is_directory(dir)) continue;
    MapRecord record;
    record.dir = RelPath::parse("maps/" + name);
    record.floorplan = record.dir / "floorplan.fpm";
    if (!fs::exists(dir / "floorplan.fpm")) {
      scan.violations.push_back(
          {record.dir.str(), "environment model floorplan.fpm missing"});
      continue;
    }
    try {
      YAML::Node fp = YAML::Load(slurp(dir / "floorplan.fpm"));
      YAML::Node meta = fp["metadata"];
      std::vector<std::string> missing;
      auto need = [&meta, &missing](const char* key) -> YAML::Node {
        YAML::Node n = meta ? meta[key] : YAML::Node();
        if (!n) missing.push_back(key);
        return n;
      };
      auto& em = record.meta;
      if (auto n = need("attribution"); n) em.attribution_orcid = yaml_str(n);
      if (auto n = need("authors"); n)
        for (const auto& a : n) em.authors.push_back(yaml_str(a));
      if (auto n = need("created"); n) em.created = yaml_str(n);
      if (auto n = need("modified"); n) em.modified = yaml_str(n);
      if (auto n = need("size"); n) em.size = n.as<std::uint64_t>();
      if (auto n = need("license"); n) em.license = yaml_str(n);
      if (auto n = need("description"); n) em.description = yaml_str(n);
      if (auto n = need("map_location"); n) em.map_location = yaml_str(n);
      if (!missing.empty()) {
        std::string fields;
        for (const auto& f : missing) fields += (fields.empty() ? "" : ", ") + f;
        scan.violations.push_back(
            {record.floorplan.str(),
             "environment model metadata incomplete: missing " + fields});
        continue;
      }
    } catch (const YAML::Exception& e) {
      scan.violations.push_back({record.floorplan.str(), e.what()});
      continue;
    }
    record_size(scan, root, record.floorplan);
    bool complete = true;
    for (const char* artifact : {"mesh.dae", "occupancy.pgm", "world.sdf"}) {
      if (!fs::exists(dir / artifact)) {
        scan.violations.push_back(
            {record.dir.str(),
             std::string("environment artifact missing: ") + artifact});
        complete = false;
        continue;
      }
      ArtifactEntry entry;
      entry.path = record.dir / artifact;
      entry.kind = ArtifactKind::Other;
      entry.size =
          static_cast<std::uint64_t>(fs::file_size(dir / artifact));
      scan.file_sizes[entry.path.str()] = entry.size;
      record.artifacts.push_back(std::move(entry));
    }
    if (complete) scan.maps.push_back(std::move(record));
  }
}

void scan_scenario(const fs::path& root, ScanResult& scan) {
  fs::path dir = root / "scenario";
  if (!fs::is_directory(dir)) {
    scan.violations.push_back({"scenario", "scenario directory missing"});
    return;
  }
  for (const auto& name : sorted_entries(dir)) {
    if (name.ends_with(".osc") && scan.abstract_scenario.empty())
      scan.abstract_scenario = RelPath::parse("scenario/" + name);
    if (name.ends_with(".vast") && scan.variation_file.empty())
      scan.variation_file = RelPath::parse("scenario/" + name);
  }
  if (scan.abstract_scenario.empty())
    scan.violations.push_back({"scenario", "no abstract scenario (.osc) found"});
  else
    record_size(scan, root, scan.abstract_scenario);
  if (scan.variation_file.empty()) {
    scan.violations.push_back({"scenario", "no variation file (.vast) found"});
    return;
  }
  record_size(scan, root, scan.variation_file);
  try {
    YAML::Node v = YAML::Load(slurp(root / scan.variation_file.str()));
    if (v["metadata"]) {
      if (v["metadata"]["modified"])
        scan.variation_modified = yaml_str(v["metadata"]["modified"]);
      if (v["metadata"]["attribution"])
        scan.variation_attribution = yaml_str(v["metadata"]["attribution"]);
    }
  } catch (const YAML::Exception& e) {
    scan.violations.push_back({scan.variation_file.str(), e.what()});
  }
}

void scan_shared_config(const fs::path& root, const CampaignManifest& manifest,
                        ScanResult& scan) {
  for (const std::string& rel :
       {manifest.execution.launch_file, manifest.execution.parameter_file}) {
    if (rel.empty()) continue;
    if (!fs::exists(root / rel)) {
      scan.violations.push_back({rel, "declared input file missing"});
      continue;
    }
    record_size(scan, root, RelPath::parse(rel));
  }
  const std::string& params = manifest.execution.parameter_file;
  if (!params.empty() && fs::exists(root / params)) {
    try {
      YAML::Node p = YAML::Load(slurp(root / params));
      if (p["version"]) scan.orig_params_version = yaml_str(p["version"]);
      if (p["modified"]) scan.orig_params_modified = yaml_str(p["modified"]);
    } catch (const YAML::Exception& e) {
      scan.violations.push_back({params, e.what()});
    }
  }
}

bool scan_run(const fs::path& root, const RelPath& config_dir,
              const std::string& run_name, ScanResult& scan) {
  RelPath run_dir = config_dir / "runs" / run_name;
  fs::path dir = root / run_dir.str();

  RunRecord record;
  record.dir = run_dir;
  record.config_dir = config_dir;

  if (!fs::exists(dir / "test.xml")) {
    scan.violations.push_back({run_dir.str(), "test.xml missing"});
    return false;
  }
  try {
    TestReport report = parse_test_report(slurp(dir / "test.xml"));
    record.success = report.success;
    record.duration_s = report.duration_s;
    record.duration_lex = report.duration_lex;
    record.started = report.started;
    record.ended = report.ended;
  } catch (const Error& e) {
    scan.violations.push_back({run_dir.str(), e.what()});
    return false;
  }

  if (!fs::exists(dir / "metadata.yaml")) {
    scan.violations.push_back({run_dir.str(), "metadata.yaml missing"});
    return false;
  }
  try {
    YAML::Node meta = YAML::Load(slurp(dir / "metadata.yaml"));
    if (YAML::Node sys = meta["system"]; sys) {
      if (sys["hardware"]) record.system.hardware = yaml_str(sys["hardware"]);
      if (sys["middleware"])
        record.system.middleware = yaml_str(sys["middleware"]);
      if (sys["runtime"]) record.system.runtime = yaml_str(sys["runtime"]);
    }
    if (YAML::Node bag = meta["bag"]; bag) {
      if (bag["middleware_version"])
        record.bag.middleware_version = yaml_str(bag["middleware_version"]);
      if (bag["messages"])
        for (const auto& msg : bag["messages"]) {
          MessageStat stat;
          stat.type = yaml_str(msg["type"]);
          stat.count = msg["count"].as<std::int64_t>();
          record.bag.messages.push_back(std::move(stat));
        }
    }
  } catch (const YAML::Exception& e) {
    scan.violations.push_back({run_dir.str(), e.what()});
    return false;
  }

  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    files.push_back(
        fs::relative(entry.path(), dir).generic_string());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    ArtifactEntry artifact;
    artifact.path = run_dir;
    for (const auto& seg : RelPath::parse(file).segments())
      artifact.path = artifact.path / seg;
    artifact.kind = classify_artifact(artifact.path);
    artifact.size = static_cast<std::uint64_t>(fs::file_size(dir / file));
    scan.file_sizes[artifact.path.str()] = artifact.size;
    record.artifacts.push_back(std::move(artifact));
  }
  scan.runs.push_back(std::move(record));
  return true;
}

void scan_configs(const fs::path& root, ScanResult& scan) {
  fs::path configs_dir = root / "configs";
  if (!fs::is_directory(configs_dir)) {
    scan.violations.push_back({"configs", "configs directory missing"});
    return;
  }
  for (const auto& name : sorted_entries(configs_dir)) {
    fs::path dir = configs_dir / name;
    if (!fs::is_directory(dir)) continue;
    RelPath config_dir = RelPath::parse("configs/" + name);

    if (!fs::exists(dir / "scenario.config")) {
      scan.violations.push_back({config_dir.str(), "scenario.config missing"});
      continue;
    }
    ConfigRecord record;
    record.dir = config_dir;
    record.scenario_file = config_dir / "scenario.config";
    record.params_file = config_dir / "nav2_params.yaml";
    try {
      auto kv = parse_key_values(slurp(dir / "scenario.config"));
      const std::string where = record.scenario_file.str();
      record.start_pose = parse_pose(kv.at("start_pose", where), "start_pose");
      record.goal_pose = parse_pose(kv.at("goal_pose", where), "goal_pose");
      record.n_obstacles = parse_int(kv.at("n_obstacles", where), "n_obstacles");
      record.robot_radius_m = kv.at("robot_radius_m", where);
      record.path_length_m = kv.at("path_length_m", where);
      record.n_runs = parse_int(kv.at("n_runs", where), "n_runs");
      record.map_dir = kv.at("map", where);
      record.grid_ref = kv.at("occupancy_grid", where);
      record.mesh_ref = kv.at("mesh", where);
      record.world_ref = kv.at("world", where);
      for (int o = 1; o <= record.n_obstacles; ++o) {
        auto it = kv.values.find("obstacle_" + std::to_string(o));
        if (it != kv.values.end())
          record.obstacles.push_back(parse_pose(it->second, "obstacle"));
      }
    } catch (const Error& e) {
      scan.violations.push_back({config_dir.str(), e.what()});
      continue;
    }
    record_size(scan, root, record.scenario_file);

    if (!fs::exists(dir / "nav2_params.yaml")) {
      scan.violations.push_back({config_dir.str(), "nav2_params.yaml missing"});
      continue;
    }
    try {
      YAML::Node p = YAML::Load(slurp(dir / "nav2_params.yaml"));
      if (p["version"]) record.params_version = yaml_str(p["version"]);
      if (p["modified"]) record.params_modified = yaml_str(p["modified"]);
    } catch (const YAML::Exception& e) {
      scan.violations.push_back({record.params_file.str(), e.what()});
      continue;
    }
    record_size(scan, root, record.params_file);

    fs::path runs_dir = dir / "runs";
    if (!fs::is_directory(runs_dir)) {
      scan.violations.push_back({config_dir.str(), "runs directory missing"});
      scan.configs.push_back(std::move(record));
      continue;
    }
    for (const auto& run_name : sorted_entries(runs_dir)) {
      if (!fs::is_directory(runs_dir / run_name)) {
        scan.violations.push_back(
            {config_dir.str() + "/runs/" + run_name,
             "stray file in runs directory"});
        continue;
      }
      scan_run(root, config_dir, run_name, scan);
    }
    scan.configs.push_back(std::move(record));
  }
}

}  // namespace

ScanResult scan_campaign(const fs::path& results_root,
                         const CampaignManifest& manifest) {
  if (!fs::is_directory(results_root))
    throw MalformedInput("results root " + results_root.string() +
                         " is not a directory");
  ScanResult scan;
  RelPath manifest_rel = RelPath::parse("campaign.vast.yaml");
  if (fs::exists(results_root / manifest_rel.str()))
    record_size(scan, results_root, manifest_rel);
  scan_maps(results_root, scan);
  scan_scenario(results_root, scan);
  scan_shared_config(results_root, manifest, scan);
  scan_configs(results_root, scan);
  return scan;
}

void CollectorRegistry::add(CollectorPlugin plugin) {
  for (const auto& existing : plugins_)
    if (existing.name == plugin.name)
      throw DuplicatePlugin("plugin \"" + plugin.name +
                            "\" is already registered");
  plugins_.push_back(std::move(plugin));
}

namespace {

LinkedDocument collect_campaign_info(const CollectorContext& ctx) {
  const auto& v = Vocab::get();
  LinkedDocument doc;
  auto& campaign =
      doc.node(mint_from_path(*ctx.base, RelPath::parse("campaign")));
  campaign.add(v.rv_n_runs,
               Value(LiteralValue::integer(
                   static_cast<std::int64_t>(ctx.scan->configs.size()) *
                   ctx.manifest->execution.runs_per_config)));
  std::string started, ended;
  for (const auto& run : ctx.scan->runs) {
    if (started.empty() || run.started < started) started = run.started;
    if (ended.empty() || run.ended > ended) ended = run.ended;
  }
  if (!started.empty()) {
    campaign.add(v.prov_startedAtTime, Value(LiteralValue::date_time(started)));
    campaign.add(v.prov_endedAtTime, Value(LiteralValue::date_time(ended)));
  }
  campaign.add(v.prov_used, Value(mint_from_path(
                                *ctx.base, RelPath::parse("campaign.vast.yaml"))));
  return doc;
}

LinkedDocument collect_units(const CollectorContext& ctx) {
  (void)ctx;
  const auto& v = Vocab::get();
  LinkedDocument doc;
  doc.node(v.rv_robotRadius).add(v.qudt_unit, Value(v.qudt_metre));
  doc.node(v.rv_pathLength).add(v.qudt_unit, Value(v.qudt_metre));
  doc.node(v.rv_duration).add(v.qudt_unit, Value(v.qudt_second));
  return doc;
}

LinkedDocument collect_scenario_params(const CollectorContext& ctx) {
  const auto& v = Vocab::get();
  const auto& cfg = *ctx.config;
  LinkedDocument doc;
  auto& scenario = doc.node(mint_from_path(*ctx.base, cfg.scenario_file));
  scenario.add(v.rv_n_obstacles,
               Value(LiteralValue::integer(cfg.n_obstacles)));
  scenario.add(v.rv_n_runs, Value(LiteralValue::integer(cfg.n_runs)));
  scenario.add(v.rv_robotRadius,
               Value(LiteralValue::decimal(cfg.robot_radius_m)));
  scenario.add(v.rv_pathLength,
               Value(LiteralValue::decimal(cfg.path_length_m)));
  return doc;
}

LinkedDocument collect_run_outcome(const CollectorContext& ctx) {
  const auto& v = Vocab::get();
  const auto& run = *ctx.run;
  LinkedDocument doc;
  auto& node = doc.node(run_identifier(*ctx.base, run.dir));
  node.add(v.rv_success, Value(LiteralValue::boolean(run.success)));
  node.add(v.prov_startedAtTime, Value(LiteralValue::date_time(run.started)));
  node.add(v.prov_endedAtTime, Value(LiteralValue::date_time(run.ended)));
  node.add(v.rv_duration, Value(LiteralValue::decimal(run.duration_lex)));
  return doc;
}

LinkedDocument collect_system_info(const CollectorContext& ctx) {
  const auto& v = Vocab::get();
  const auto& run = *ctx.run;
  LinkedDocument doc;
  auto& node = doc.node(run_identifier(*ctx.base, run.dir));
  if (!run.system.hardware.empty())
    node.add(v.rv_hardware, Value(LiteralValue::str(run.system.hardware)));
  if (!run.system.middleware.empty())
    node.add(v.rv_middleware, Value(LiteralValue::str(run.system.middleware)));
  if (!run.system.runtime.empty())
    node.add(v.rv_runtimeEnvironment,
             Value(LiteralValue::str(run.system.runtime)));
  return doc;
}

LinkedDocument collect_bag_meta(const CollectorContext& ctx) {
  const auto& v = Vocab::get();
  const auto& run = *ctx.run;
  LinkedDocument doc;
  auto& bag = doc.node(mint_from_path(*ctx.base, run.dir / "rosbag"));
  if (!run.bag.middleware_version.empty())
    bag.add(v.rv_middlewareVersion,
            Value(LiteralValue::str(run.bag.middleware_version)));
  std::int64_t total = 0;
  for (const auto& msg : run.bag.messages) {
    bag.add(v.rv_messageType, Value(LiteralValue::str(msg.type)));
    total += msg.count;
  }
  bag.add(v.rv_messageCount, Value(LiteralValue::integer(total)));
  return doc;
}

LinkedDocument collect_postprocess_info(const CollectorContext& ctx) {
  const auto& v = Vocab::get();
  const auto& run = *ctx.run;
  LinkedDocument doc;
  bool has_csv = std::any_of(
      run.artifacts.begin(), run.artifacts.end(),
      [](const ArtifactEntry& a) { return a.kind == ArtifactKind::Csv; });
  if (!has_csv) return doc;
  auto& activity = doc.node(
      mint_from_path(*ctx.base, run.dir / "postprocess" / "extract_poses"));
  activity.add(v.rv_plugin, Value(LiteralValue::str("pose_extractor")));
  activity.add(v.rv_parameter, Value(LiteralValue::str("topic=/amcl_pose")));
  activity.add(v.rv_parameter, Value(LiteralValue::str("rate_hz=10")));
  return doc;
}

}  // namespace

CollectorRegistry CollectorRegistry::builtin() {
  CollectorRegistry registry;
  registry.add({"campaign_info", CollectorLevel::Campaign,
                collect_campaign_info});
  registry.add({"units", CollectorLevel::Campaign, collect_units});
  registry.add({"scenario_params", CollectorLevel::Configuration,
                collect_scenario_params});
  registry.add({"run_outcome", CollectorLevel::Run, collect_run_outcome});
  registry.add({"system_info", CollectorLevel::Run, collect_system_info});
  registry.add({"bag_meta", CollectorLevel::Run, collect_bag_meta});
  registry.add({"postprocess_info", CollectorLevel::Postprocess,
                collect_postprocess_info});
  return registry;
}

CollectOutput run_collectors(const CollectorRegistry& registry,
                             const CampaignManifest& manifest,
                             const ScanResult& scan, const BaseIri& base) {
  if (registry.empty())
    throw MalformedInput("collector registry is empty");
  CollectOutput out;
  auto invoke = [&out](const CollectorPlugin& plugin,
                       const CollectorContext& ctx) {
    try {
      LinkedDocument fragment = plugin.collect(ctx);
      if (!fragment.empty()) out.fragments.push_back(std::move(fragment));
    } catch (const std::exception& e) {
      out.failures.push_back({plugin.name, e.what()});
    }
  };

  CollectorContext ctx;
  ctx.manifest = &manifest;
  ctx.scan = &scan;
  ctx.base = &base;

  for (const auto& plugin : registry.plugins()) {
    switch (plugin.level) {
      case CollectorLevel::Campaign:
        invoke(plugin, ctx);
        break;
      case CollectorLevel::Configuration:
        for (const auto& config : scan.configs) {
          CollectorContext c = ctx;
          c.config = &config;
          invoke(plugin, c);
        }
        break;
      case CollectorLevel::Run:
      case CollectorLevel::Postprocess:
        for (const auto& run : scan.runs) {
          CollectorContext c = ctx;
          c.run = &run;
          invoke(plugin, c);
        }
        break;
    }
  }
  return out;
}

}  // namespace fairprov

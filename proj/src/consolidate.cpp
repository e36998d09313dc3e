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

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace fairprov {

namespace {

// Collapses a filename template to a stable distribution slug:
// "{timestamp:%Y%m%d}_metadata.zip" -> "metadata.zip".
std::string distribution_slug(const std::string& filename_template) {
  std::string out;
  bool in_brace = false;
  for (char c : filename_template) {
    if (c == '{') in_brace = true;
    else if (c == '}') in_brace = false;
    else if (!in_brace) out += c;
  }
  while (!out.empty() && (out.front() == '_' || out.front() == '-' ||
                          out.front() == '.'))
    out.erase(0, 1);
  if (out.empty()) out = "distribution.zip";
  return out;
}

struct Builder {
  const CampaignManifest& manifest;
  const ScanResult& scan;
  const BaseIri& base;
  LinkedDocument doc;

  const Vocab& v = Vocab::get();

  Iri id(const RelPath& rel) const { return mint_from_path(base, rel); }
  Iri id(const std::string& rel) const {
    return mint_from_path(base, RelPath::parse(rel));
  }

  NodeObject& entity(const Iri& node_id, const RelPath& rel) {
    auto& node = doc.node(node_id);
    node.add_type(v.prov_Entity);
    node.add(v.rv_relativePath, Value(LiteralValue::str(rel.str())));
    auto size = scan.file_sizes.find(rel.str());
    if (size != scan.file_sizes.end())
      node.add(v.dcat_byteSize,
               Value(LiteralValue::integer(
                   static_cast<std::int64_t>(size->second))));
    return node;
  }

  NodeObject& collection(const RelPath& rel) {
    auto& node = entity(id(rel), rel);
    node.add_type(v.prov_Collection);
    return node;
  }

  Iri person(const std::string& orcid) {
    Iri node_id = mint_person(orcid);
    auto& node = doc.node(node_id);
    node.add_type(v.prov_Person);
    node.add_type(v.prov_Agent);
    for (const auto& creator : manifest.creators)
      if (creator.orcid == orcid)
        node.add(v.dct_title, Value(LiteralValue::str(creator.name)));
    return node_id;
  }

  const AgentSpec* find_agent(const std::string& name) const {
    for (const auto& agent : manifest.execution.agents)
      if (agent.name == name) return &agent;
    return nullptr;
  }

  Iri agent_node(const AgentSpec& spec) {
    Iri node_id = agent_iri(base, spec);
    auto& node = doc.node(node_id);
    node.add_type(v.prov_Agent);
    if (spec.kind == "software") node.add_type(v.prov_SoftwareAgent);
    node.add(v.dct_title, Value(LiteralValue::str(spec.name)));
    return node_id;
  }
};

}  // namespace

LinkedDocument build_graph(const CampaignManifest& manifest,
                           const ScanResult& scan,
                           std::vector<LinkedDocument> fragments) {
  if (!manifest.dataset_iri)
    throw MissingMandatoryEdge("manifest carries no dataset IRI");
  if (scan.variation_file.empty() || scan.abstract_scenario.empty())
    throw MissingMandatoryEdge(
        "scan is incomplete: abstract scenario or variation file missing");
  if (scan.maps.empty())
    throw MissingMandatoryEdge("scan found no environment models");

  Builder b{manifest, scan, manifest.base(), {}};
  const auto& v = b.v;
  b.doc.context.set_base(manifest.base().iri());

  // agents
  const AgentSpec* robot_spec = nullptr;
  const AgentSpec* framework_spec = nullptr;
  for (const auto& agent : manifest.execution.agents) {
    if (!robot_spec && agent.kind == "robot") robot_spec = &agent;
    if (!framework_spec && agent.kind == "software") framework_spec = &agent;
  }
  if (const AgentSpec* named = b.find_agent("robovast"); named)
    framework_spec = named;
  if (!robot_spec)
    throw MissingMandatoryEdge("manifest declares no robot agent");
  if (!framework_spec)
    throw MissingMandatoryEdge("manifest declares no software agent");
  Iri robot = b.agent_node(*robot_spec);
  Iri framework = b.agent_node(*framework_spec);
  for (const auto& agent : manifest.execution.agents) b.agent_node(agent);
  const AgentSpec* pp_spec = b.find_agent("pose_extractor");
  Iri postprocessor = pp_spec ? b.agent_node(*pp_spec) : framework;
  const AgentSpec* fpg_spec = b.find_agent("FloorPlanGeneration");
  Iri env_generator = fpg_spec ? b.agent_node(*fpg_spec) : framework;

  // dataset node: the base IRI itself
  auto& dataset = b.doc.node(manifest.base().iri());
  dataset.add_type(v.dcat_Dataset);
  dataset.add(v.dct_title, Value(LiteralValue::str(manifest.title)));
  if (!manifest.description.empty())
    dataset.add(v.dct_description, Value(LiteralValue::str(manifest.description)));
  dataset.add(v.dct_license, Value(LiteralValue::str(manifest.license)));
  for (const auto& keyword : manifest.keywords)
    dataset.add(v.dcat_keyword, Value(LiteralValue::str(keyword)));
  for (const auto& creator : manifest.creators)
    dataset.add(v.dct_creator, Value(b.person(creator.orcid)));

  // declared distributions
  for (const auto& spec : manifest.publication) {
    Iri dist_id = b.id("distributions/" + distribution_slug(spec.filename_template));
    auto& dist = b.doc.node(dist_id);
    dist.add_type(v.dcat_Distribution);
    dist.add_type(v.prov_Entity);
    dist.add(v.rv_filenameTemplate,
             Value(LiteralValue::str(spec.filename_template)));
    dataset.add(v.dcat_distribution, Value(dist_id));
  }

  // top-level collections
  RelPath maps_rel = RelPath::parse("maps");
  RelPath scenario_rel = RelPath::parse("scenario");
  RelPath config_rel = RelPath::parse("config");
  RelPath configs_rel = RelPath::parse("configs");
  for (const auto& rel : {maps_rel, scenario_rel, config_rel, configs_rel}) {
    b.collection(rel);
    dataset.add(v.prov_hadMember, Value(b.id(rel)));
  }

  // manifest file
  RelPath manifest_rel = RelPath::parse("campaign.vast.yaml");
  auto& manifest_node = b.entity(b.id(manifest_rel), manifest_rel);
  manifest_node.add_type(v.rv_SourceArtifact);
  dataset.add(v.prov_hadMember, Value(b.id(manifest_rel)));

  // campaign activity
  Iri campaign_id = b.id("campaign");
  auto& campaign = b.doc.node(campaign_id);
  campaign.add_type(v.prov_Activity);
  campaign.add_type(v.rv_Campaign);
  campaign.add(v.prov_used, Value(b.id(manifest_rel)));
  campaign.add(v.prov_wasAssociatedWith, Value(framework));

  // scenario generation activity: instantiates every concrete scenario
  Iri scenario_gen = b.id("campaign/scenario_generation");
  auto& gen = b.doc.node(scenario_gen);
  gen.add_type(v.prov_Activity);
  gen.add(v.prov_used, Value(b.id(scan.abstract_scenario)));
  gen.add(v.prov_used, Value(b.id(scan.variation_file)));
  gen.add(v.prov_wasAssociatedWith, Value(framework));
  gen.add(v.prov_wasInformedBy, Value(campaign_id));
  for (const char* plugin : {"PathVariationRandom", "ObstacleVariation",
                             "ParameterVariationList"})
    if (const AgentSpec* spec = b.find_agent(plugin); spec)
      gen.add(v.prov_wasAssociatedWith, Value(b.agent_node(*spec)));

  // abstract scenario and variation file
  auto& abstract = b.entity(b.id(scan.abstract_scenario), scan.abstract_scenario);
  abstract.add_type(v.smm_AbstractScenario);
  abstract.add_type(v.rv_SourceArtifact);
  b.doc.find(b.id(scenario_rel))
      ->add(v.prov_hadMember, Value(b.id(scan.abstract_scenario)));

  auto& variation = b.entity(b.id(scan.variation_file), scan.variation_file);
  variation.add_type(v.smm_ScenarioVariation);
  variation.add_type(v.rv_SourceArtifact);
  variation.add(v.dct_references, Value(b.id(scan.abstract_scenario)));
  if (!scan.variation_modified.empty())
    variation.add(v.dct_modified,
                  Value(LiteralValue::date_time(scan.variation_modified)));
  if (!scan.variation_attribution.empty())
    variation.add(v.prov_wasAttributedTo,
                  Value(b.person(scan.variation_attribution)));
  b.doc.find(b.id(scenario_rel))
      ->add(v.prov_hadMember, Value(b.id(scan.variation_file)));

  // shared robot configuration inputs
  std::optional<Iri> launch_id, orig_params_id;
  if (!manifest.execution.launch_file.empty() &&
      scan.file_sizes.count(manifest.execution.launch_file)) {
    RelPath rel = RelPath::parse(manifest.execution.launch_file);
    launch_id = b.id(rel);
    b.entity(*launch_id, rel).add_type(v.rv_SourceArtifact);
    b.doc.find(b.id(config_rel))->add(v.prov_hadMember, Value(*launch_id));
    variation.add(v.dct_references, Value(*launch_id));
  }
  if (!manifest.execution.parameter_file.empty() &&
      scan.file_sizes.count(manifest.execution.parameter_file)) {
    RelPath rel = RelPath::parse(manifest.execution.parameter_file);
    orig_params_id = b.id(rel);
    auto& orig = b.entity(*orig_params_id, rel);
    orig.add_type(v.rv_SourceArtifact);
    if (!scan.orig_params_version.empty())
      orig.add(v.dct_hasVersion,
               Value(LiteralValue::str(scan.orig_params_version)));
    if (!scan.orig_params_modified.empty())
      orig.add(v.dct_modified,
               Value(LiteralValue::date_time(scan.orig_params_modified)));
    b.doc.find(b.id(config_rel))->add(v.prov_hadMember, Value(*orig_params_id));
    variation.add(v.dct_references, Value(*orig_params_id));
  }

  // environment models and their generation activities (three per map)
  std::map<std::string, Iri> env_artifact_ids;  // rel path -> node
  for (const auto& map : scan.maps) {
    Iri map_dir_id = b.collection(map.dir).id;
    b.doc.find(b.id(maps_rel))->add(v.prov_hadMember, Value(map_dir_id));

    auto& floorplan = b.entity(b.id(map.floorplan), map.floorplan);
    floorplan.add_type(v.smm_EnvironmentModel);
    floorplan.add_type(v.rv_SourceArtifact);
    floorplan.add(v.prov_wasAttributedTo,
                  Value(b.person(map.meta.attribution_orcid)));
    floorplan.add(v.dct_created,
                  Value(LiteralValue::date_time(map.meta.created)));
    floorplan.add(v.dct_modified,
                  Value(LiteralValue::date_time(map.meta.modified)));
    floorplan.add(v.dct_license, Value(LiteralValue::str(map.meta.license)));
    floorplan.add(v.dct_description,
                  Value(LiteralValue::str(map.meta.description)));
    floorplan.add(v.rv_mapLocation,
                  Value(LiteralValue::str(map.meta.map_location)));
    for (const auto& author : map.meta.authors)
      floorplan.add(v.rv_author, Value(LiteralValue::str(author)));
    b.doc.find(map_dir_id)->add(v.prov_hadMember, Value(b.id(map.floorplan)));
    variation.add(v.dct_references, Value(b.id(map.floorplan)));

    struct EnvSpec {
      const char* suffix;
      const char* activity;
    };
    static const EnvSpec kEnv[] = {
        {"mesh.dae", "generate_mesh"},
        {"occupancy.pgm", "generate_occupancy_grid"},
        {"world.sdf", "generate_world_model"},
    };
    for (const auto& env : kEnv) {
      RelPath artifact_rel = map.dir / env.suffix;
      if (!scan.file_sizes.count(artifact_rel.str())) continue;
      Iri activity_id = b.id(map.dir / env.activity);
      auto& activity = b.doc.node(activity_id);
      activity.add_type(v.prov_Activity);
      activity.add(v.prov_used, Value(b.id(map.floorplan)));
      activity.add(v.prov_wasInformedBy, Value(scenario_gen));
      activity.add(v.prov_wasAssociatedWith, Value(env_generator));

      auto& artifact = b.entity(b.id(artifact_rel), artifact_rel);
      artifact.add(v.prov_wasGeneratedBy, Value(activity_id));
      artifact.add(v.prov_wasDerivedFrom, Value(b.id(map.floorplan)));
      b.doc.find(map_dir_id)->add(v.prov_hadMember, Value(b.id(artifact_rel)));
      env_artifact_ids.emplace(artifact_rel.str(), b.id(artifact_rel));
    }
  }

  // configurations
  std::map<std::string, Iri> scenario_ids;  // config dir -> concrete scenario
  std::map<std::string, Iri> params_ids;    // config dir -> robot config file
  for (const auto& config : scan.configs) {
    Iri cfg_dir_id = b.collection(config.dir).id;
    b.doc.find(b.id(configs_rel))->add(v.prov_hadMember, Value(cfg_dir_id));

    auto& scenario = b.entity(b.id(config.scenario_file), config.scenario_file);
    scenario.add_type(v.smm_ConcreteScenario);
    scenario.add(v.prov_wasGeneratedBy, Value(scenario_gen));
    scenario.add(v.dct_references, Value(b.id(scan.variation_file)));
    for (const std::string* ref :
         {&config.grid_ref, &config.mesh_ref, &config.world_ref}) {
      auto it = env_artifact_ids.find(*ref);
      if (it != env_artifact_ids.end())
        scenario.add(v.dct_references, Value(it->second));
    }
    b.doc.find(cfg_dir_id)->add(v.prov_hadMember,
                                Value(b.id(config.scenario_file)));
    scenario_ids.emplace(config.dir.str(), b.id(config.scenario_file));

    auto& params = b.entity(b.id(config.params_file), config.params_file);
    params.add(v.prov_wasGeneratedBy, Value(scenario_gen));
    if (orig_params_id)
      params.add(v.prov_wasDerivedFrom, Value(*orig_params_id));
    if (!config.params_version.empty())
      params.add(v.dct_hasVersion,
                 Value(LiteralValue::str(config.params_version)));
    if (!config.params_modified.empty())
      params.add(v.dct_modified,
                 Value(LiteralValue::date_time(config.params_modified)));
    b.doc.find(cfg_dir_id)->add(v.prov_hadMember,
                                Value(b.id(config.params_file)));
    params_ids.emplace(config.dir.str(), b.id(config.params_file));

    // one load_config activity per (robot, configuration) pair
    Iri load_id = b.id(config.dir / "load_config");
    auto& load = b.doc.node(load_id);
    load.add_type(v.prov_Activity);
    load.add_type(v.rv_ConfigurationLoad);
    load.add(v.prov_used, Value(b.id(config.params_file)));
    load.add(v.prov_wasAssociatedWith, Value(robot));
  }

  // test executions
  for (const auto& run : scan.runs) {
    auto scenario_it = scenario_ids.find(run.config_dir.str());
    auto params_it = params_ids.find(run.config_dir.str());
    if (scenario_it == scenario_ids.end() || params_it == params_ids.end())
      throw MissingMandatoryEdge("run " + run.dir.str() +
                                 " has no consolidated configuration");

    Iri run_id = run_identifier(manifest.base(), run.dir);
    auto& exec = b.doc.node(run_id);
    exec.add_type(v.prov_Activity);
    exec.add_type(v.rv_TestExecution);
    exec.add(v.prov_used, Value(scenario_it->second));
    exec.add(v.prov_used, Value(params_it->second));
    exec.add(v.prov_wasAssociatedWith, Value(robot));
    exec.add(v.prov_wasInformedBy, Value(campaign_id));

    // generated artifacts
    Iri bag_id = b.id(run.dir / "rosbag");
    Iri logs_id = b.id(run.dir / "logs");
    bool has_bag = false, has_logs = false;
    std::optional<Iri> csv_id;
    for (const auto& artifact : run.artifacts) {
      auto& node = b.entity(b.id(artifact.path), artifact.path);
      const auto& segs = artifact.path.segments();
      bool in_bag = segs[segs.size() - 2] == "rosbag";
      bool in_logs = segs[segs.size() - 2] == "logs";
      node.add(v.prov_wasGeneratedBy, Value(run_id));
      if (in_bag) {
        has_bag = true;
      } else if (in_logs) {
        has_logs = true;
      } else if (artifact.kind == ArtifactKind::Csv) {
        csv_id = b.id(artifact.path);
      }
    }
    if (has_bag) {
      auto& bag = b.entity(bag_id, run.dir / "rosbag");
      bag.add_type(v.prov_Collection);
      bag.add(v.prov_wasGeneratedBy, Value(run_id));
      for (const auto& artifact : run.artifacts) {
        const auto& segs = artifact.path.segments();
        if (segs[segs.size() - 2] != "rosbag") continue;
        bag.add(v.prov_hadMember, Value(b.id(artifact.path)));
        if (artifact.kind == ArtifactKind::Bag)
          bag.add(v.prov_atLocation, Value(b.id(artifact.path)));
      }
    }
    if (has_logs) {
      auto& logs = b.entity(logs_id, run.dir / "logs");
      logs.add_type(v.prov_Collection);
      logs.add(v.prov_wasGeneratedBy, Value(run_id));
      for (const auto& artifact : run.artifacts) {
        const auto& segs = artifact.path.segments();
        if (segs[segs.size() - 2] != "logs") continue;
        logs.add(v.prov_hadMember, Value(b.id(artifact.path)));
        if (artifact.kind == ArtifactKind::Log)
          logs.add(v.prov_atLocation, Value(b.id(artifact.path)));
      }
    }

    // postprocessing: pose extraction from the recorded bag
    if (csv_id && has_bag) {
      Iri pp_id = b.id(run.dir / "postprocess" / "extract_poses");
      auto& pp = b.doc.node(pp_id);
      pp.add_type(v.prov_Activity);
      pp.add(v.prov_used, Value(bag_id));
      pp.add(v.prov_wasAssociatedWith, Value(postprocessor));
      pp.add(v.prov_wasInformedBy, Value(run_id));
      auto* csv = b.doc.find(*csv_id);
      csv->remove_value(v.prov_wasGeneratedBy, Value(run_id));
      csv->add(v.prov_wasGeneratedBy, Value(pp_id));
      csv->add(v.prov_wasDerivedFrom, Value(bag_id));
    }
  }

  std::vector<LinkedDocument> all;
  all.reserve(fragments.size() + 1);
  all.push_back(std::move(b.doc));
  for (auto& fragment : fragments) all.push_back(std::move(fragment));
  try {
    return merge(std::move(all));
  } catch (const ConflictingFunctionalValue& e) {
    throw ConsolidationConflict(e.what());
  }
}

namespace {

struct GraphView {
  const LinkedDocument& doc;
  const Vocab& v = Vocab::get();

  bool has_type(const NodeObject& node, const Iri& type) const {
    return node.has_type(type);
  }

  std::size_t count(const NodeObject& node, const Iri& pred) const {
    const auto* list = node.get(pred);
    return list ? list->size() : 0;
  }

  std::vector<Iri> refs(const NodeObject& node, const Iri& pred) const {
    std::vector<Iri> out;
    if (const auto* list = node.get(pred))
      for (const auto& value : *list)
        if (is_ref(value)) out.push_back(std::get<Iri>(value));
    return out;
  }
};

void check_multiplicities(const GraphView& g, GraphReport& report) {
  const auto& v = g.v;
  struct Rule {
    const Iri& source_type;
    const Iri& predicate;
    std::size_t min;
    std::size_t max;  // 0 = unbounded
    const char* what;
  };
  const Rule kRules[] = {
      {v.rv_TestExecution, v.prov_used, 1, 0, "prov:used"},
      {v.rv_TestExecution, v.prov_wasAssociatedWith, 1, 0,
       "prov:wasAssociatedWith"},
      {v.rv_TestExecution, v.prov_startedAtTime, 1, 1, "prov:startedAtTime"},
      {v.rv_TestExecution, v.prov_endedAtTime, 1, 1, "prov:endedAtTime"},
      {v.rv_TestExecution, v.rv_success, 1, 1, "robovast:success"},
      {v.smm_ConcreteScenario, v.prov_wasGeneratedBy, 1, 1,
       "prov:wasGeneratedBy"},
      {v.smm_ConcreteScenario, v.dct_references, 1, 0, "dcterms:references"},
      {v.rv_ConfigurationLoad, v.prov_used, 1, 0, "prov:used"},
      {v.rv_ConfigurationLoad, v.prov_wasAssociatedWith, 1, 0,
       "prov:wasAssociatedWith"},
      {v.dcat_Dataset, v.dct_title, 1, 1, "dcterms:title"},
      {v.dcat_Dataset, v.dct_description, 1, 1, "dcterms:description"},
      {v.dcat_Dataset, v.dct_license, 1, 1, "dcterms:license"},
      {v.dcat_Dataset, v.prov_hadMember, 1, 0, "prov:hadMember"},
      {v.smm_EnvironmentModel, v.prov_wasAttributedTo, 1, 0,
       "prov:wasAttributedTo"},
      {v.smm_ScenarioVariation, v.prov_wasAttributedTo, 1, 0,
       "prov:wasAttributedTo"},
      {v.smm_ScenarioVariation, v.dct_references, 1, 0, "dcterms:references"},
  };
  for (const auto& [id, node] : g.doc.nodes) {
    for (const auto& rule : kRules) {
      if (!node.has_type(rule.source_type)) continue;
      std::size_t n = g.count(node, rule.predicate);
      if (n < rule.min || (rule.max != 0 && n > rule.max))
        report.violations.push_back(
            {rules::kMultiplicity, id,
             std::string(rule.what) + " count " + std::to_string(n) +
                 " outside [" + std::to_string(rule.min) + ", " +
                 (rule.max ? std::to_string(rule.max) : std::string("*")) +
                 "] for " + g.doc.context.compact_str(rule.source_type)});
    }
    // a TestExecution uses exactly one concrete scenario
    if (node.has_type(g.v.rv_TestExecution)) {
      std::size_t scenarios = 0;
      for (const auto& ref : g.refs(node, g.v.prov_used)) {
        const auto* target = g.doc.find(ref);
        if (target && target->has_type(g.v.smm_ConcreteScenario)) ++scenarios;
      }
      if (scenarios != 1)
        report.violations.push_back(
            {rules::kMultiplicity, id,
             "test execution uses " + std::to_string(scenarios) +
                 " concrete scenarios, expected exactly 1"});
    }
  }
}

void check_type_discipline(const GraphView& g, GraphReport& report) {
  const auto& v = g.v;
  struct Discipline {
    const Iri& predicate;
    const Iri* subject_type;  // null = unconstrained
    const Iri* object_type;
  };
  const Discipline kTable[] = {
      {v.prov_used, &v.prov_Activity, &v.prov_Entity},
      {v.prov_wasGeneratedBy, &v.prov_Entity, &v.prov_Activity},
      {v.prov_wasAssociatedWith, &v.prov_Activity, &v.prov_Agent},
      {v.prov_wasAttributedTo, &v.prov_Entity, &v.prov_Agent},
      {v.prov_wasInformedBy, &v.prov_Activity, &v.prov_Activity},
      {v.prov_wasDerivedFrom, &v.prov_Entity, &v.prov_Entity},
      {v.prov_hadMember, &v.prov_Entity, &v.prov_Entity},
      {v.prov_atLocation, nullptr, &v.prov_Entity},
      {v.dct_references, &v.prov_Entity, &v.prov_Entity},
      {v.dcat_distribution, &v.dcat_Dataset, &v.dcat_Distribution},
  };
  for (const auto& [id, node] : g.doc.nodes) {
    for (const auto& d : kTable) {
      const auto* list = node.get(d.predicate);
      if (!list) continue;
      if (d.subject_type && !node.has_type(*d.subject_type))
        report.violations.push_back(
            {rules::kTypeDiscipline, id,
             "subject of " + g.doc.context.compact_str(d.predicate) +
                 " is not a " + g.doc.context.compact_str(*d.subject_type)});
      if (!d.object_type) continue;
      for (const auto& value : *list) {
        if (!is_ref(value)) {
          report.violations.push_back(
              {rules::kTypeDiscipline, id,
               g.doc.context.compact_str(d.predicate) +
                   " carries a literal object"});
          continue;
        }
        const auto* target = g.doc.find(std::get<Iri>(value));
        if (target && !target->has_type(*d.object_type))
          report.violations.push_back(
              {rules::kTypeDiscipline, id,
               "object " + std::get<Iri>(value).str() + " of " +
                   g.doc.context.compact_str(d.predicate) + " is not a " +
                   g.doc.context.compact_str(*d.object_type)});
      }
    }
  }
}

void check_chains(const GraphView& g, GraphReport& report) {
  const auto& v = g.v;
  // roots and structural nodes are exempt from generation chains
  auto exempt = [&v](const NodeObject& node) {
    return node.has_type(v.rv_SourceArtifact) || node.has_type(v.dcat_Dataset) ||
           node.has_type(v.dcat_Distribution) ||
           node.has_type(v.prov_Collection);
  };

  enum class State { Unknown, Visiting, Traceable, Untraceable };
  std::map<Iri, State> state;

  std::function<bool(const Iri&)> traceable = [&](const Iri& id) -> bool {
    auto it = state.find(id);
    if (it != state.end()) {
      if (it->second == State::Visiting) return false;  // cycle
      return it->second == State::Traceable;
    }
    const auto* node = g.doc.find(id);
    if (!node) return false;
    if (exempt(*node)) {
      state[id] = State::Traceable;
      return true;
    }
    state[id] = State::Visiting;
    bool ok = false;
    for (const auto& from : g.refs(*node, v.prov_wasDerivedFrom))
      if (traceable(from)) {
        ok = true;
        break;
      }
    if (!ok) {
      for (const auto& activity_id : g.refs(*node, v.prov_wasGeneratedBy)) {
        const auto* activity = g.doc.find(activity_id);
        if (!activity) continue;
        for (const auto& input : g.refs(*activity, v.prov_used))
          if (traceable(input)) {
            ok = true;
            break;
          }
        if (ok) break;
      }
    }
    state[id] = ok ? State::Traceable : State::Untraceable;
    return ok;
  };

  for (const auto& [id, node] : g.doc.nodes) {
    if (!node.has_type(v.prov_Entity) || exempt(node)) continue;
    if (!traceable(id))
      report.violations.push_back(
          {rules::kProvenanceChain, id,
           "no prov:wasGeneratedBy / prov:wasDerivedFrom chain reaches a "
           "source artifact"});
    // derivation implies a recorded generation
    if (g.count(node, v.prov_wasDerivedFrom) > 0 &&
        g.count(node, v.prov_wasGeneratedBy) == 0)
      report.violations.push_back(
          {rules::kDerivationGeneration, id,
           "entity is derived but carries no prov:wasGeneratedBy"});
  }
}

void check_residency(const GraphView& g, GraphReport& report) {
  if (!g.doc.context.base()) return;
  std::string base = g.doc.context.base()->str();
  auto allowed = [&g, &base](const Iri& id) {
    const std::string& s = id.str();
    if (s == base || s.starts_with(base + "/")) return true;
    if (s.starts_with("https://orcid.org/")) return true;
    if (s.starts_with("https://purl.org/")) return true;  // agent PURLs
    for (const auto& [prefix, ns] : g.doc.context.entries()) {
      (void)prefix;
      if (s.starts_with(ns.str())) return true;  // vocabulary IRIs
    }
    return false;
  };
  for (const auto& [id, node] : g.doc.nodes) {
    (void)node;
    if (!allowed(id))
      report.violations.push_back(
          {rules::kResidency, id,
           "node id is outside the dataset base and the known identifier "
           "schemes"});
  }
}

void check_functional(const GraphView& g, GraphReport& report) {
  for (const auto& [id, node] : g.doc.nodes)
    for (const auto& [pred, values] : node.properties)
      if (values.size() > 1 && is_functional_property(pred))
        report.violations.push_back(
            {rules::kFunctional, id,
             g.doc.context.compact_str(pred) + " carries " +
                 std::to_string(values.size()) + " values"});
}

void check_persons(const GraphView& g, GraphReport& report) {
  for (const auto& [id, node] : g.doc.nodes)
    if (node.has_type(g.v.prov_Person) &&
        !id.str().starts_with("https://orcid.org/"))
      report.violations.push_back(
          {rules::kPersonId, id, "person node id is not an ORCID IRI"});
}

void check_load_config(const GraphView& g, GraphReport& report) {
  const auto& v = g.v;
  // configuration entities used by executions must also be loaded by a
  // robovast:ConfigurationLoad activity
  std::set<Iri> loaded;
  for (const auto& [id, node] : g.doc.nodes) {
    (void)id;
    if (!node.has_type(v.rv_ConfigurationLoad)) continue;
    for (const auto& ref : g.refs(node, v.prov_used)) loaded.insert(ref);
  }
  std::set<Iri> reported;
  for (const auto& [id, node] : g.doc.nodes) {
    (void)id;
    if (!node.has_type(v.rv_TestExecution)) continue;
    for (const auto& ref : g.refs(node, v.prov_used)) {
      const auto* target = g.doc.find(ref);
      if (!target || target->has_type(v.smm_ConcreteScenario)) continue;
      if (!loaded.count(ref) && reported.insert(ref).second)
        report.violations.push_back(
            {rules::kLoadConfig, ref,
             "robot configuration has no load_config activity (expected a "
             "robovast:ConfigurationLoad using it)"});
    }
  }
}

}  // namespace

GraphReport stats(const LinkedDocument& doc) {
  GraphReport report;
  report.node_count = doc.nodes.size();
  for (const auto& [id, node] : doc.nodes) {
    (void)id;
    for (const auto& type : node.types) ++report.node_counts_by_type[type];
  }
  report.triple_count = to_triples(doc).size();
  return report;
}

GraphReport validate_graph(const LinkedDocument& doc) {
  GraphReport report = stats(doc);
  GraphView g{doc};
  check_multiplicities(g, report);
  check_type_discipline(g, report);
  check_chains(g, report);
  check_residency(g, report);
  check_functional(g, report);
  check_persons(g, report);
  check_load_config(g, report);
  return report;
}

std::string render_stats(const GraphReport& report) {
  std::ostringstream out;
  out << "nodes: " << report.node_count << "\n"
      << "triples: " << report.triple_count << "\n"
      << "violations: " << report.violations.size() << "\n";
  auto table = PrefixTable::builtin();
  for (const auto& [type, count] : report.node_counts_by_type)
    out << "  " << table.compact_str(type) << ": " << count << "\n";
  return out.str();
}

}  // namespace fairprov

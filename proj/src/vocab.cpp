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

#include "fairprov/vocab.hpp"

#include <algorithm>
#include <cctype>

namespace fairprov {

namespace {

constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
constexpr std::string_view kProv = "http://www.w3.org/ns/prov#";
constexpr std::string_view kDcat = "http://www.w3.org/ns/dcat#";
constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
constexpr std::string_view kQudt = "http://qudt.org/schema/qudt/";
constexpr std::string_view kRobovast = "https://purl.org/robovast/metamodels#";
constexpr std::string_view kSmm = "https://purl.org/robovast/metamodels/smm#";

bool valid_scheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' ||
           c == '-' || c == '.';
  });
}

}  // namespace

Iri::Iri(std::string value) : value_(std::move(value)) {
  auto colon = value_.find(':');
  if (colon == std::string::npos || colon == 0)
    throw InvalidIri("missing scheme in \"" + value_ + "\"");
  if (!valid_scheme(std::string_view(value_).substr(0, colon)))
    throw InvalidIri("invalid scheme in \"" + value_ + "\"");
  if (colon + 1 == value_.size())
    throw InvalidIri("empty scheme-specific part in \"" + value_ + "\"");
  static constexpr std::string_view kForbidden = "<>\"{}|\\^`";
  for (char c : value_) {
    auto b = static_cast<unsigned char>(c);
    if (b <= 0x20 || kForbidden.find(c) != std::string_view::npos)
      throw InvalidIri("character not allowed in IRI: \"" + value_ + "\"");
  }
}

Term Term::parse(std::string_view curie) {
  auto colon = curie.find(':');
  if (colon == std::string_view::npos)
    throw MalformedInput("not a prefixed name: \"" + std::string(curie) + "\"");
  return Term{std::string(curie.substr(0, colon)),
              std::string(curie.substr(colon + 1))};
}

std::string_view to_string(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::NodeRef: return "node-reference";
    case ObjectKind::String: return "string";
    case ObjectKind::Integer: return "integer";
    case ObjectKind::Decimal: return "decimal";
    case ObjectKind::Boolean: return "boolean";
    case ObjectKind::DateTime: return "dateTime";
  }
  return "unknown";
}

PrefixTable PrefixTable::builtin() {
  PrefixTable t;
  t.add("rdf", Iri(std::string(kRdf)));
  t.add("xsd", Iri(std::string(kXsd)));
  t.add("prov", Iri(std::string(kProv)));
  t.add("dcat", Iri(std::string(kDcat)));
  t.add("dcterms", Iri(std::string(kDcterms)));
  t.add("qudt", Iri(std::string(kQudt)));
  t.add("robovast", Iri(std::string(kRobovast)));
  t.add("smm", Iri(std::string(kSmm)));
  return t;
}

void PrefixTable::add(const std::string& prefix, Iri base) {
  if (base.empty())
    throw MalformedInput("prefix \"" + prefix + "\" maps to an empty base");
  entries_[prefix] = std::move(base);
}

bool PrefixTable::has(const std::string& prefix) const {
  return entries_.count(prefix) != 0;
}

Iri PrefixTable::expand(const Term& term) const {
  auto it = entries_.find(term.prefix);
  if (it == entries_.end())
    throw UnknownPrefix("prefix \"" + term.prefix + "\" is not registered");
  return Iri(it->second.str() + term.local);
}

std::variant<Term, Iri> PrefixTable::compact(const Iri& iri) const {
  const std::string* best_prefix = nullptr;
  const std::string* best_base = nullptr;
  for (const auto& [prefix, base] : entries_) {
    const std::string& b = base.str();
    if (iri.str().size() > b.size() && iri.str().compare(0, b.size(), b) == 0) {
      if (!best_base || b.size() > best_base->size()) {
        best_prefix = &prefix;
        best_base = &b;
      }
    }
  }
  if (!best_prefix) return iri;
  return Term{*best_prefix, iri.str().substr(best_base->size())};
}

std::string PrefixTable::compact_str(const Iri& iri) const {
  auto c = compact(iri);
  if (std::holds_alternative<Term>(c)) return std::get<Term>(c).curie();
  return std::get<Iri>(c).str();
}

TermCatalog::TermCatalog() {
  auto cls = [this](const char* p, const char* l) {
    classes_.insert(Term{p, l});
  };
  auto prop = [this](const char* p, const char* l, ObjectKind k) {
    properties_.emplace(Term{p, l}, k);
  };

  cls("prov", "Entity");
  cls("prov", "Activity");
  cls("prov", "Agent");
  cls("prov", "Person");
  cls("prov", "SoftwareAgent");
  cls("prov", "Collection");
  cls("dcat", "Dataset");
  cls("dcat", "Distribution");
  cls("smm", "AbstractScenario");
  cls("smm", "ConcreteScenario");
  cls("smm", "EnvironmentModel");
  cls("smm", "ScenarioVariation");
  cls("robovast", "TestExecution");
  cls("robovast", "Campaign");
  cls("robovast", "ConfigurationLoad");
  cls("robovast", "SourceArtifact");

  prop("rdf", "type", ObjectKind::NodeRef);
  prop("prov", "used", ObjectKind::NodeRef);
  prop("prov", "wasGeneratedBy", ObjectKind::NodeRef);
  prop("prov", "wasDerivedFrom", ObjectKind::NodeRef);
  prop("prov", "wasAttributedTo", ObjectKind::NodeRef);
  prop("prov", "wasAssociatedWith", ObjectKind::NodeRef);
  prop("prov", "wasInformedBy", ObjectKind::NodeRef);
  prop("prov", "hadMember", ObjectKind::NodeRef);
  prop("prov", "atLocation", ObjectKind::NodeRef);
  prop("prov", "startedAtTime", ObjectKind::DateTime);
  prop("prov", "endedAtTime", ObjectKind::DateTime);

  prop("dcat", "distribution", ObjectKind::NodeRef);
  prop("dcat", "keyword", ObjectKind::String);
  prop("dcat", "byteSize", ObjectKind::Integer);

  prop("dcterms", "title", ObjectKind::String);
  prop("dcterms", "description", ObjectKind::String);
  prop("dcterms", "creator", ObjectKind::NodeRef);
  prop("dcterms", "license", ObjectKind::String);
  prop("dcterms", "identifier", ObjectKind::String);
  prop("dcterms", "issued", ObjectKind::DateTime);
  prop("dcterms", "modified", ObjectKind::DateTime);
  prop("dcterms", "created", ObjectKind::DateTime);
  prop("dcterms", "hasVersion", ObjectKind::String);
  prop("dcterms", "references", ObjectKind::NodeRef);

  prop("qudt", "unit", ObjectKind::NodeRef);

  prop("robovast", "success", ObjectKind::Boolean);
  prop("robovast", "n_obstacles", ObjectKind::Integer);
  prop("robovast", "n_runs", ObjectKind::Integer);
  prop("robovast", "robotRadius", ObjectKind::Decimal);
  prop("robovast", "relativePath", ObjectKind::String);
  prop("robovast", "plugin", ObjectKind::String);
  prop("robovast", "parameter", ObjectKind::String);
  prop("robovast", "duration", ObjectKind::Decimal);
  prop("robovast", "pathLength", ObjectKind::Decimal);
  prop("robovast", "hardware", ObjectKind::String);
  prop("robovast", "middleware", ObjectKind::String);
  prop("robovast", "runtimeEnvironment", ObjectKind::String);
  prop("robovast", "middlewareVersion", ObjectKind::String);
  prop("robovast", "messageType", ObjectKind::String);
  prop("robovast", "messageCount", ObjectKind::Integer);
  prop("robovast", "author", ObjectKind::String);
  prop("robovast", "mapLocation", ObjectKind::String);
  prop("robovast", "sha256", ObjectKind::String);
  prop("robovast", "filenameTemplate", ObjectKind::String);

  individuals_.insert(Term{"qudt", "M"});
  individuals_.insert(Term{"qudt", "SEC"});
}

const TermCatalog& TermCatalog::builtin() {
  static const TermCatalog catalog;
  return catalog;
}

bool TermCatalog::has_class(const Term& term) const {
  return classes_.count(term) != 0;
}

bool TermCatalog::has_property(const Term& term) const {
  return properties_.count(term) != 0;
}

bool TermCatalog::has_individual(const Term& term) const {
  return individuals_.count(term) != 0;
}

std::optional<ObjectKind> TermCatalog::object_kind(const Term& property) const {
  auto it = properties_.find(property);
  if (it != properties_.end()) return it->second;
  if (property.prefix == "robovast" || property.prefix == "smm")
    return std::nullopt;  // evolving custom vocabulary, accepted passthrough
  throw UnknownProperty("\"" + property.curie() + "\" is not in the catalog");
}

std::optional<ObjectKind> TermCatalog::object_kind(const Iri& predicate) const {
  auto c = PrefixTable::builtin().compact(predicate);
  if (std::holds_alternative<Iri>(c))
    throw UnknownProperty("\"" + predicate.str() +
                          "\" is outside every registered namespace");
  return object_kind(std::get<Term>(c));
}

bool TermCatalog::is_custom_namespace(const Iri& iri) const {
  return iri.str().starts_with(kRobovast) || iri.str().starts_with(kSmm);
}

bool TermCatalog::is_standard_namespace(const Iri& iri) const {
  const std::string& s = iri.str();
  return s.starts_with(kRdf) || s.starts_with(kXsd) || s.starts_with(kProv) ||
         s.starts_with(kDcat) || s.starts_with(kDcterms) ||
         s.starts_with(kQudt);
}

Vocab::Vocab() {
  auto table = PrefixTable::builtin();
  auto x = [&table](const char* curie) {
    return table.expand(Term::parse(curie));
  };

  rdf_type = x("rdf:type");

  prov_Entity = x("prov:Entity");
  prov_Activity = x("prov:Activity");
  prov_Agent = x("prov:Agent");
  prov_Person = x("prov:Person");
  prov_SoftwareAgent = x("prov:SoftwareAgent");
  prov_Collection = x("prov:Collection");
  prov_used = x("prov:used");
  prov_wasGeneratedBy = x("prov:wasGeneratedBy");
  prov_wasDerivedFrom = x("prov:wasDerivedFrom");
  prov_wasAttributedTo = x("prov:wasAttributedTo");
  prov_wasAssociatedWith = x("prov:wasAssociatedWith");
  prov_wasInformedBy = x("prov:wasInformedBy");
  prov_hadMember = x("prov:hadMember");
  prov_atLocation = x("prov:atLocation");
  prov_startedAtTime = x("prov:startedAtTime");
  prov_endedAtTime = x("prov:endedAtTime");

  dcat_Dataset = x("dcat:Dataset");
  dcat_Distribution = x("dcat:Distribution");
  dcat_distribution = x("dcat:distribution");
  dcat_keyword = x("dcat:keyword");
  dcat_byteSize = x("dcat:byteSize");

  dct_title = x("dcterms:title");
  dct_description = x("dcterms:description");
  dct_creator = x("dcterms:creator");
  dct_license = x("dcterms:license");
  dct_identifier = x("dcterms:identifier");
  dct_issued = x("dcterms:issued");
  dct_modified = x("dcterms:modified");
  dct_created = x("dcterms:created");
  dct_hasVersion = x("dcterms:hasVersion");
  dct_references = x("dcterms:references");

  smm_AbstractScenario = x("smm:AbstractScenario");
  smm_ConcreteScenario = x("smm:ConcreteScenario");
  smm_EnvironmentModel = x("smm:EnvironmentModel");
  smm_ScenarioVariation = x("smm:ScenarioVariation");

  rv_TestExecution = x("robovast:TestExecution");
  rv_Campaign = x("robovast:Campaign");
  rv_ConfigurationLoad = x("robovast:ConfigurationLoad");
  rv_SourceArtifact = x("robovast:SourceArtifact");
  rv_success = x("robovast:success");
  rv_n_obstacles = x("robovast:n_obstacles");
  rv_n_runs = x("robovast:n_runs");
  rv_robotRadius = x("robovast:robotRadius");
  rv_relativePath = x("robovast:relativePath");
  rv_plugin = x("robovast:plugin");
  rv_parameter = x("robovast:parameter");
  rv_duration = x("robovast:duration");
  rv_pathLength = x("robovast:pathLength");
  rv_hardware = x("robovast:hardware");
  rv_middleware = x("robovast:middleware");
  rv_runtimeEnvironment = x("robovast:runtimeEnvironment");
  rv_middlewareVersion = x("robovast:middlewareVersion");
  rv_messageType = x("robovast:messageType");
  rv_messageCount = x("robovast:messageCount");
  rv_author = x("robovast:author");
  rv_mapLocation = x("robovast:mapLocation");
  rv_sha256 = x("robovast:sha256");
  rv_filenameTemplate = x("robovast:filenameTemplate");

  qudt_unit = x("qudt:unit");
  qudt_metre = x("qudt:M");
  qudt_second = x("qudt:SEC");

  xsd_string = x("xsd:string");
  xsd_integer = x("xsd:integer");
  xsd_decimal = x("xsd:decimal");
  xsd_boolean = x("xsd:boolean");
  xsd_dateTime = x("xsd:dateTime");
}

const Vocab& Vocab::get() {
  static const Vocab vocab;
  return vocab;
}

}  // namespace fairprov

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

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "fairprov/errors.hpp"

namespace fairprov {

// Absolute IRI. Requires a scheme and rejects whitespace, control bytes and
// the characters RFC 3987 excludes from IRIs.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value);

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend bool operator==(const Iri&, const Iri&) = default;
  friend auto operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string value_;
};

// Compact prefixed name, rendered "prefix:local".
struct Term {
  std::string prefix;
  std::string local;

  std::string curie() const { return prefix + ":" + local; }
  static Term parse(std::string_view curie);  // throws MalformedInput

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

// Expected object of a property: a node reference or a typed literal.
enum class ObjectKind { NodeRef, String, Integer, Decimal, Boolean, DateTime };

std::string_view to_string(ObjectKind kind);

class PrefixTable {
 public:
  // The eight built-in prefixes (rdf, xsd, prov, dcat, dcterms, qudt,
  // robovast, smm), no base.
  static PrefixTable builtin();

  void add(const std::string& prefix, Iri base);
  bool has(const std::string& prefix) const;

  void set_base(Iri base) { base_ = std::move(base); }
  const std::optional<Iri>& base() const noexcept { return base_; }

  Iri expand(const Term& term) const;  // throws UnknownPrefix
  // Longest-matching registered base wins; falls back to the IRI unchanged.
  std::variant<Term, Iri> compact(const Iri& iri) const;
  std::string compact_str(const Iri& iri) const;

  const std::map<std::string, Iri>& entries() const noexcept {
    return entries_;
  }

 private:
  std::map<std::string, Iri> entries_;
  std::optional<Iri> base_;
};

// Closed catalog of the classes, properties and named individuals the
// toolkit emits. Terms in the robovast:/smm: namespaces that are not in the
// catalog are accepted as passthrough, since the custom vocabulary is still
// evolving.
class TermCatalog {
 public:
  static const TermCatalog& builtin();

  bool has_class(const Term& term) const;
  bool has_property(const Term& term) const;
  bool has_individual(const Term& term) const;

  // Declared object kind of a property. nullopt for passthrough
  // custom-namespace terms; throws UnknownProperty for everything else.
  std::optional<ObjectKind> object_kind(const Term& property) const;
  std::optional<ObjectKind> object_kind(const Iri& predicate) const;

  bool is_custom_namespace(const Iri& iri) const;    // robovast: or smm:
  bool is_standard_namespace(const Iri& iri) const;  // rdf/xsd/prov/dcat/dcterms/qudt

  const std::set<Term>& classes() const noexcept { return classes_; }
  const std::map<Term, ObjectKind>& properties() const noexcept {
    return properties_;
  }
  const std::set<Term>& individuals() const noexcept { return individuals_; }

 private:
  TermCatalog();

  std::set<Term> classes_;
  std::map<Term, ObjectKind> properties_;
  std::set<Term> individuals_;
};

// Expanded IRIs for the catalog terms used throughout the toolkit.
struct Vocab {
  static const Vocab& get();

  Iri rdf_type;

  Iri prov_Entity, prov_Activity, prov_Agent, prov_Person, prov_SoftwareAgent,
      prov_Collection;
  Iri prov_used, prov_wasGeneratedBy, prov_wasDerivedFrom, prov_wasAttributedTo,
      prov_wasAssociatedWith, prov_wasInformedBy, prov_hadMember,
      prov_atLocation, prov_startedAtTime, prov_endedAtTime;

  Iri dcat_Dataset, dcat_Distribution, dcat_distribution, dcat_keyword,
      dcat_byteSize;

  Iri dct_title, dct_description, dct_creator, dct_license, dct_identifier,
      dct_issued, dct_modified, dct_created, dct_hasVersion, dct_references;

  Iri smm_AbstractScenario, smm_ConcreteScenario, smm_EnvironmentModel,
      smm_ScenarioVariation;

  Iri rv_TestExecution, rv_Campaign, rv_ConfigurationLoad, rv_SourceArtifact;
  Iri rv_success, rv_n_obstacles, rv_n_runs, rv_robotRadius, rv_relativePath,
      rv_plugin, rv_parameter, rv_duration, rv_pathLength, rv_hardware,
      rv_middleware, rv_runtimeEnvironment, rv_middlewareVersion,
      rv_messageType, rv_messageCount, rv_author, rv_mapLocation, rv_sha256,
      rv_filenameTemplate;

  Iri qudt_unit, qudt_metre, qudt_second;

  Iri xsd_string, xsd_integer, xsd_decimal, xsd_boolean, xsd_dateTime;

 private:
  Vocab();
};

}  // namespace fairprov

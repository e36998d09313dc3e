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

#include <doctest.h>

using namespace fairprov;

TEST_CASE("expand resolves built-in prefixes") {
  auto table = PrefixTable::builtin();
  CHECK(table.expand(Term::parse("prov:used")).str() ==
        "http://www.w3.org/ns/prov#used");
  CHECK(table.expand(Term::parse("dcterms:title")).str() ==
        "http://purl.org/dc/terms/title");
  CHECK_THROWS_AS(table.expand(Term::parse("xyz:foo")), UnknownPrefix);
}

TEST_CASE("compact inverts expand and falls back to the IRI") {
  auto table = PrefixTable::builtin();
  CHECK(table.compact_str(Iri("http://www.w3.org/ns/prov#Entity")) ==
        "prov:Entity");
  CHECK(table.compact_str(Iri("http://purl.org/dc/terms/modified")) ==
        "dcterms:modified");
  Iri unknown("https://example.org/unknown#x");
  auto c = table.compact(unknown);
  REQUIRE(std::holds_alternative<Iri>(c));
  CHECK(std::get<Iri>(c) == unknown);
}

TEST_CASE("compact picks the longest matching base") {
  auto table = PrefixTable::builtin();
  CHECK(table.compact_str(Iri(
            "https://purl.org/robovast/metamodels/smm#ConcreteScenario")) ==
        "smm:ConcreteScenario");
  CHECK(table.compact_str(
            Iri("https://purl.org/robovast/metamodels#success")) ==
        "robovast:success");
}

TEST_CASE("built-in prefixes are always present") {
  auto table = PrefixTable::builtin();
  for (const char* p :
       {"rdf", "xsd", "prov", "dcat", "dcterms", "qudt", "robovast", "smm"})
    CHECK(table.has(p));
}

TEST_CASE("object_kind declares the expected object") {
  const auto& catalog = TermCatalog::builtin();
  CHECK(catalog.object_kind(Term::parse("robovast:success")) ==
        ObjectKind::Boolean);
  CHECK(catalog.object_kind(Term::parse("prov:used")) == ObjectKind::NodeRef);
  CHECK(catalog.object_kind(Term::parse("dcterms:modified")) ==
        ObjectKind::DateTime);
}

TEST_CASE("object_kind passes custom-namespace terms through") {
  const auto& catalog = TermCatalog::builtin();
  CHECK(catalog.object_kind(Term::parse("robovast:somethingNew")) ==
        std::nullopt);
  CHECK(catalog.object_kind(Term::parse("smm:FutureConcept")) == std::nullopt);
  CHECK_THROWS_AS(catalog.object_kind(Term::parse("foaf:name")),
                  UnknownProperty);
}

TEST_CASE("catalog contains the required terms") {
  const auto& catalog = TermCatalog::builtin();
  for (const char* c :
       {"prov:Entity", "prov:Activity", "prov:Agent", "prov:Person",
        "prov:SoftwareAgent", "dcat:Dataset", "dcat:Distribution",
        "smm:AbstractScenario", "smm:ConcreteScenario", "smm:EnvironmentModel",
        "smm:ScenarioVariation", "robovast:TestExecution", "robovast:Campaign"})
    CHECK(catalog.has_class(Term::parse(c)));
  for (const char* p :
       {"prov:used", "prov:wasGeneratedBy", "prov:wasDerivedFrom",
        "prov:wasAttributedTo", "prov:wasAssociatedWith", "prov:wasInformedBy",
        "prov:hadMember", "prov:atLocation", "prov:startedAtTime",
        "prov:endedAtTime", "dcat:distribution", "dcat:keyword",
        "dcterms:title", "dcterms:description", "dcterms:creator",
        "dcterms:license", "dcterms:identifier", "dcterms:issued",
        "dcterms:modified", "dcterms:hasVersion", "dcterms:references",
        "robovast:success", "robovast:n_obstacles", "robovast:n_runs",
        "robovast:robotRadius", "robovast:relativePath", "robovast:plugin",
        "robovast:parameter", "qudt:unit"})
    CHECK(catalog.has_property(Term::parse(p)));
  CHECK(catalog.has_individual(Term::parse("qudt:M")));
  CHECK(catalog.has_individual(Term::parse("qudt:SEC")));
}

TEST_CASE("compact(expand(t)) round-trips over the whole catalog") {
  const auto& catalog = TermCatalog::builtin();
  auto table = PrefixTable::builtin();
  auto roundtrip = [&](const Term& t) {
    Iri expanded = table.expand(t);  // expand is total on the catalog
    auto c = table.compact(expanded);
    REQUIRE(std::holds_alternative<Term>(c));
    CHECK(std::get<Term>(c) == t);
  };
  for (const auto& t : catalog.classes()) roundtrip(t);
  for (const auto& [t, kind] : catalog.properties()) {
    (void)kind;
    roundtrip(t);
  }
  for (const auto& t : catalog.individuals()) roundtrip(t);
}

TEST_CASE("Iri validation") {
  CHECK_NOTHROW(Iri("https://purl.org/x"));
  CHECK_NOTHROW(Iri("urn:uuid:1234"));
  CHECK_THROWS_AS(Iri("no-scheme-here"), InvalidIri);
  CHECK_THROWS_AS(Iri("https://example.org/with space"), InvalidIri);
  CHECK_THROWS_AS(Iri("1http://x/y"), InvalidIri);
}

TEST_CASE("namespace classification") {
  const auto& catalog = TermCatalog::builtin();
  const auto& v = Vocab::get();
  CHECK(catalog.is_custom_namespace(v.rv_success));
  CHECK(catalog.is_custom_namespace(v.smm_ConcreteScenario));
  CHECK(catalog.is_standard_namespace(v.prov_used));
  CHECK(catalog.is_standard_namespace(v.dct_title));
  CHECK_FALSE(catalog.is_standard_namespace(v.rv_success));
  CHECK_FALSE(catalog.is_custom_namespace(Iri("https://example.org/p")));
}

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

#include "fairprov/queryengine.hpp"

#include <doctest.h>

#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace fairprov;

namespace {

const char* kListing3 = R"(PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
PREFIX prov: <http://www.w3.org/ns/prov#>
PREFIX dcterms: <http://purl.org/dc/terms/>
PREFIX robovast: <https://purl.org/robovast/metamodels#>
PREFIX smm: <https://purl.org/robovast/metamodels/smm#>

SELECT ?conf
GROUP_CONCAT(DISTINCT ?f;SEPARATOR=",") AS ?fs
WHERE {
  ?run rdf:type robovast:TestExecution .
  ?conf rdf:type smm:ConcreteScenario .
  ?run prov:used/(dcterms:references|prov:hadMember|prov:atLocation)* ?f .
  ?conf robovast:n_obstacles ?obst .
  FILTER ( ?obst = 0 )
} GROUP BY ?conf
)";

const char* kListing4 = R"(PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
PREFIX prov: <http://www.w3.org/ns/prov#>
PREFIX robovast: <https://purl.org/robovast/metamodels#>
PREFIX smm: <https://purl.org/robovast/metamodels/smm#>

SELECT ?conf (SUM(?fail)/COUNT(?run)*100 AS ?rate) (COUNT (?run) AS ?total)
WHERE {
  ?conf rdf:type smm:ConcreteScenario .
  ?run prov:used ?conf .
  ?run rdf:type robovast:TestExecution .
  ?run robovast:success ?success .
  BIND(IF(?success=true, 0, 1) AS ?fail) .
} GROUP BY ?conf
)";

// configs with (failed, total) runs; every run uses its scenario
LinkedDocument rate_fixture(const std::vector<std::pair<int, int>>& configs) {
  const auto& v = Vocab::get();
  LinkedDocument doc;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    Iri conf("https://purl.org/ds/configs/c" + std::to_string(c) +
             "/scenario.config");
    auto& scenario = doc.node(conf);
    scenario.add_type(v.prov_Entity);
    scenario.add_type(v.smm_ConcreteScenario);
    scenario.add(v.rv_n_obstacles, Value(LiteralValue::integer(0)));
    auto [failed, total] = configs[c];
    for (int r = 0; r < total; ++r) {
      Iri run("https://purl.org/ds/configs/c" + std::to_string(c) + "/runs/r" +
              std::to_string(r));
      auto& exec = doc.node(run);
      exec.add_type(v.prov_Activity);
      exec.add_type(v.rv_TestExecution);
      exec.add(v.prov_used, Value(conf));
      exec.add(v.rv_success, Value(LiteralValue::boolean(r >= failed)));
    }
  }
  return doc;
}

}  // namespace

TEST_CASE("Listing 3 parses verbatim") {
  QueryAst ast = parse_query(kListing3);
  std::size_t patterns = 0, filters = 0;
  for (const auto& e : ast.where) {
    if (e.kind == WhereElement::Kind::Pattern) ++patterns;
    if (e.kind == WhereElement::Kind::Filter) ++filters;
  }
  CHECK(patterns == 4);
  CHECK(filters == 1);
  REQUIRE(ast.group_by.size() == 1);
  CHECK(ast.group_by[0] == "conf");
  REQUIRE(ast.projection.size() == 2);
  CHECK(ast.projection[0].var == "conf");
  CHECK(ast.projection[1].var == "fs");
  REQUIRE(ast.projection[1].expr != nullptr);
  CHECK(ast.projection[1].expr->kind == Expression::Kind::GroupConcat);
  CHECK(ast.projection[1].expr->distinct);
  CHECK(ast.projection[1].expr->separator == ",");
}

TEST_CASE("Listing 4 parses verbatim") {
  QueryAst ast = parse_query(kListing4);
  REQUIRE(ast.projection.size() == 3);
  CHECK(ast.projection[1].var == "rate");
  CHECK(ast.projection[2].var == "total");
  REQUIRE(ast.projection[1].expr != nullptr);
  // (SUM(?fail)/COUNT(?run))*100
  const auto& rate = *ast.projection[1].expr;
  CHECK(rate.kind == Expression::Kind::Arith);
  CHECK(rate.op == "*");
  CHECK(rate.args[0]->op == "/");
  CHECK(rate.args[0]->args[0]->kind == Expression::Kind::Sum);
  CHECK(rate.args[0]->args[1]->kind == Expression::Kind::Count);
  CHECK(ast.has_aggregates());
  std::size_t binds = 0;
  for (const auto& e : ast.where)
    if (e.kind == WhereElement::Kind::Bind) ++binds;
  CHECK(binds == 1);
}

TEST_CASE("unsupported features are rejected by name") {
  struct Probe {
    const char* query;
    const char* name;
  };
  const Probe probes[] = {
      {"SELECT ?x WHERE { ?x ?p ?o } ORDER BY ?x", "ORDER"},
      {"SELECT ?x WHERE { OPTIONAL { ?x a ?y } }", "OPTIONAL"},
      {"SELECT ?x WHERE { { ?x a ?y } UNION { ?x a ?z } }", "UNION"},
      {"SELECT ?x WHERE { ?x a ?y } LIMIT 5", "LIMIT"},
      {"SELECT ?x WHERE { ?x a ?y } OFFSET 5", "OFFSET"},
      {"SELECT DISTINCT ?x WHERE { ?x a ?y }", "DISTINCT"},
      {"SELECT ?x WHERE { SELECT ?x WHERE { ?x a ?y } }", "subquery"},
      {"SELECT ?x WHERE { MINUS { ?x a ?y } }", "MINUS"},
      {"SELECT ?x WHERE { SERVICE <https://e.org/sparql> { ?x a ?y } }",
       "SERVICE"},
      {"SELECT ?x WHERE { VALUES ?x { 1 } }", "VALUES"},
      {"SELECT ?x WHERE { ?x <https://e.org/p>+ ?y }", "one-or-more"},
      {"ASK { ?x a ?y }", "ASK"},
  };
  for (const auto& probe : probes) {
    CAPTURE(probe.query);
    bool named = false;
    try {
      parse_query(probe.query);
    } catch (const UnsupportedFeature& e) {
      named = std::string(e.what()).find(probe.name) != std::string::npos;
    }
    CHECK(named);
  }
}

TEST_CASE("a bare variable as a query is a syntax error") {
  CHECK_THROWS_AS(parse_query("SELECT WHERE { ?x a ?y }"), SyntaxError);
  CHECK_THROWS_AS(parse_query("SELECT ?x WHERE { ?x a }"), SyntaxError);
}

TEST_CASE("zero-or-more includes the start node") {
  const auto& v = Vocab::get();
  LinkedDocument doc;
  doc.node(Iri("urn:x:a")).add(v.prov_hadMember, Value(Iri("urn:x:b")));
  FrozenGraph graph(doc);
  PathExpr star = PathExpr::star(PathExpr::pred(v.prov_hadMember));
  auto reached = eval_path(graph, Iri("urn:x:a"), star);
  CHECK(reached.count(Iri("urn:x:a")) == 1);
  CHECK(reached.count(Iri("urn:x:b")) == 1);
}

TEST_CASE("the full input path matches the three-edge fixture") {
  const auto& v = Vocab::get();
  LinkedDocument doc;
  Iri run("urn:x:run"), scenario("urn:x:scenario"), variation("urn:x:variation"),
      floorplan("urn:x:floorplan");
  doc.node(run).add(v.prov_used, Value(scenario));
  doc.node(scenario).add(v.dct_references, Value(variation));
  doc.node(variation).add(v.dct_references, Value(floorplan));
  FrozenGraph graph(doc);

  PathExpr full = PathExpr::seq(
      {PathExpr::pred(v.prov_used),
       PathExpr::star(PathExpr::alt({PathExpr::pred(v.dct_references),
                                     PathExpr::pred(v.prov_hadMember),
                                     PathExpr::pred(v.prov_atLocation)}))});

  auto reached = eval_path(graph, run, full);
  CHECK(reached == std::set<Iri>{scenario, variation, floorplan});

  auto oracle = oracles::input_closure(to_triples(doc), run.str());
  std::set<std::string> got;
  for (const auto& iri : reached) got.insert(iri.str());
  CHECK(got == oracle);
}

TEST_CASE("closure terminates on cycles") {
  const auto& v = Vocab::get();
  LinkedDocument doc;
  doc.node(Iri("urn:x:a")).add(v.prov_hadMember, Value(Iri("urn:x:b")));
  doc.node(Iri("urn:x:b")).add(v.prov_hadMember, Value(Iri("urn:x:a")));
  FrozenGraph graph(doc);
  PathExpr star = PathExpr::star(PathExpr::pred(v.prov_hadMember));
  auto reached = eval_path(graph, Iri("urn:x:a"), star);
  CHECK(reached == std::set<Iri>{Iri("urn:x:a"), Iri("urn:x:b")});
}

TEST_CASE("path closure equals the BFS oracle on randomized graphs") {
  const auto& v = Vocab::get();
  test_util::SplitMix64 rng(0xC105EULL);
  PathExpr full = PathExpr::seq(
      {PathExpr::pred(v.prov_used),
       PathExpr::star(PathExpr::alt({PathExpr::pred(v.dct_references),
                                     PathExpr::pred(v.prov_hadMember),
                                     PathExpr::pred(v.prov_atLocation)}))});

  for (int round = 0; round < 50; ++round) {
    LinkedDocument doc;
    std::size_t n = 2 + rng.below(49);
    std::vector<Iri> nodes;
    for (std::size_t i = 0; i < n; ++i)
      nodes.emplace_back("urn:x:n" + std::to_string(i));
    const Iri preds[] = {v.prov_used, v.dct_references, v.prov_hadMember,
                         v.prov_atLocation};
    std::size_t edges = rng.below(3 * n);
    for (std::size_t e = 0; e < edges; ++e)
      doc.node(nodes[rng.below(n)])
          .add(preds[rng.below(4)], Value(nodes[rng.below(n)]));

    FrozenGraph graph(doc);
    auto triples = to_triples(doc);
    const Iri& start = nodes[rng.below(n)];
    auto reached = eval_path(graph, start, full);
    std::set<std::string> got;
    for (const auto& iri : reached) got.insert(iri.str());
    CHECK(got == oracles::input_closure(triples, start.str()));
  }
}

TEST_CASE("Listing 4 computes failure rates") {
  auto doc = rate_fixture({{19, 20}, {0, 10}});
  auto table = evaluate(doc, parse_query(kListing4));
  REQUIRE(table.rows.size() == 2);
  CHECK(table.columns == std::vector<std::string>{"conf", "rate", "total"});
  CHECK(display_string(*table.rows[0][1]) == "95.0");
  CHECK(display_string(*table.rows[0][2]) == "20");
  CHECK(display_string(*table.rows[1][1]) == "0.0");
  CHECK(display_string(*table.rows[1][2]) == "10");
}

TEST_CASE("Listing 3 groups file closures per scenario") {
  const auto& v = Vocab::get();
  auto doc = rate_fixture({{1, 2}});
  Iri conf("https://purl.org/ds/configs/c0/scenario.config");
  doc.node(conf).add(v.dct_references, Value(Iri("https://purl.org/ds/v.vast")));
  doc.node(Iri("https://purl.org/ds/v.vast")).add_type(v.prov_Entity);
  auto table = evaluate(doc, parse_query(kListing3));
  REQUIRE(table.rows.size() == 1);
  std::string files = display_string(*table.rows[0][1]);
  CHECK(files.find(conf.str()) != std::string::npos);
  CHECK(files.find("https://purl.org/ds/v.vast") != std::string::npos);
}

TEST_CASE("aggregates match direct tallies on random graphs") {
  test_util::SplitMix64 rng(0xA66ULL);
  const auto& v = Vocab::get();
  for (int round = 0; round < 20; ++round) {
    int n_groups = 1 + static_cast<int>(rng.below(5));
    std::vector<std::pair<int, int>> configs;
    for (int gi = 0; gi < n_groups; ++gi) {
      int total = 1 + static_cast<int>(rng.below(12));
      int failed = static_cast<int>(rng.below(total + 1));
      configs.emplace_back(failed, total);
    }
    auto doc = rate_fixture(configs);
    auto table = evaluate(doc, parse_query(kListing4));
    REQUIRE(table.rows.size() == configs.size());

    // direct tally over the triple set, no engine involved
    std::map<std::string, std::pair<int, int>> tally;  // conf -> (failed, runs)
    auto triples = to_triples(doc);
    std::map<std::string, std::string> run_conf;
    for (const auto& t : triples)
      if (t.predicate == v.prov_used)
        run_conf[t.subject.str()] = std::get<Iri>(t.object).str();
    for (const auto& t : triples)
      if (t.predicate == v.rv_success) {
        auto& entry = tally[run_conf[t.subject.str()]];
        ++entry.second;
        if (std::get<LiteralValue>(t.object).lexical == "false")
          ++entry.first;
      }
    for (const auto& row : table.rows) {
      auto conf = display_string(*row[0]);
      auto expected = tally.at(conf);
      CHECK(display_string(*row[2]) == std::to_string(expected.second));
      Decimal rate = Decimal::parse(display_string(*row[1]));
      Decimal direct = Decimal::from_int(expected.first)
                           .div(Decimal::from_int(expected.second))
                           .mul(Decimal::from_int(100));
      CHECK(rate.compare(direct) == 0);
    }
  }
}

TEST_CASE("evaluation is deterministic") {
  auto doc = rate_fixture({{3, 7}, {0, 4}, {2, 2}});
  auto ast = parse_query(kListing4);
  CHECK(evaluate(doc, ast).to_csv() == evaluate(doc, ast).to_csv());
}

TEST_CASE("decimal division rounds to 12 significant digits half-even") {
  CHECK(Decimal::from_int(1).div(Decimal::from_int(3)).str() ==
        "0.333333333333");
  CHECK(Decimal::from_int(2).div(Decimal::from_int(3)).str() ==
        "0.666666666667");
  CHECK(Decimal::from_int(19).div(Decimal::from_int(20)).str() == "0.95");
  CHECK(Decimal::from_int(1).div(Decimal::from_int(8)).str() == "0.125");
  CHECK(Decimal::parse("2.5").mul(Decimal::from_int(4)).str() == "10.0");
  CHECK_THROWS_AS(Decimal::from_int(1).div(Decimal::from_int(0)),
                  EvaluationError);
}

TEST_CASE("type errors are reported") {
  const auto& v = Vocab::get();
  LinkedDocument doc;
  auto& node = doc.node(Iri("urn:x:a"));
  node.add_type(v.prov_Entity);
  node.add(v.dct_title, Value(LiteralValue::str("hello")));
  CHECK_THROWS_AS(
      evaluate(doc, parse_query("SELECT (SUM(?t)*2 AS ?x) WHERE { ?s "
                                "<http://purl.org/dc/terms/title> ?t }")),
      TypeError);
}

TEST_CASE("grouped queries reject ungrouped projections") {
  CHECK_THROWS_AS(
      parse_query("SELECT ?run (COUNT(?run) AS ?n) WHERE { ?run a ?t } "
                  "GROUP BY ?t"),
      SyntaxError);
}

TEST_CASE("true compares equal to boolean literals only") {
  const auto& v = Vocab::get();
  LinkedDocument doc;
  auto& a = doc.node(Iri("urn:x:a"));
  a.add_type(v.prov_Entity);
  a.add(v.rv_success, Value(LiteralValue::boolean(true)));
  auto& b = doc.node(Iri("urn:x:b"));
  b.add_type(v.prov_Entity);
  b.add(v.dct_title, Value(LiteralValue::str("true")));

  auto table = evaluate(
      doc, parse_query("SELECT ?s WHERE { ?s ?p ?v . FILTER(?v = true) }"));
  REQUIRE(table.rows.size() == 1);
  CHECK(display_string(*table.rows[0][0]) == "urn:x:a");
}

TEST_CASE("csv output quotes fields containing separators") {
  SolutionTable table;
  table.columns = {"a", "b"};
  table.rows.push_back({Value(LiteralValue::str("x,y")),
                        Value(LiteralValue::str("plain"))});
  CHECK(table.to_csv() == "a,b\n\"x,y\",plain\n");
}

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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "fairprov/ldgraph.hpp"

namespace fairprov {

// Property path expression: a predicate, a sequence (/), an alternation (|),
// or a zero-or-more closure (*). A Variable path stands for a predicate
// variable and is only valid as the whole path of a pattern.
struct PathExpr {
  enum class Kind { Predicate, Sequence, Alternation, ZeroOrMore, Variable };
  Kind kind = Kind::Predicate;
  Iri predicate;                // Predicate
  std::string var;              // Variable
  std::vector<PathExpr> parts;  // Sequence/Alternation >= 2, ZeroOrMore == 1

  static PathExpr pred(Iri predicate) {
    PathExpr p;
    p.kind = Kind::Predicate;
    p.predicate = std::move(predicate);
    return p;
  }
  static PathExpr seq(std::vector<PathExpr> parts) {
    PathExpr p;
    p.kind = Kind::Sequence;
    p.parts = std::move(parts);
    return p;
  }
  static PathExpr alt(std::vector<PathExpr> parts) {
    PathExpr p;
    p.kind = Kind::Alternation;
    p.parts = std::move(parts);
    return p;
  }
  static PathExpr star(PathExpr inner) {
    PathExpr p;
    p.kind = Kind::ZeroOrMore;
    p.parts.push_back(std::move(inner));
    return p;
  }
};

struct Expression {
  enum class Kind {
    Literal,
    Var,
    Compare,     // op in {=, !=, <, >, <=, >=}, args[0] op args[1]
    Arith,       // op in {+, -, *, /}
    Negate,      // -args[0]
    If,          // args: condition, then, else
    Count,       // var
    Sum,         // var
    GroupConcat  // var, distinct, separator
  };
  Kind kind = Kind::Literal;
  Value literal;
  std::string var;
  std::string op;
  std::vector<std::shared_ptr<Expression>> args;
  bool distinct = false;
  std::string separator = " ";
};
using ExprPtr = std::shared_ptr<Expression>;

// Subject/object of a triple pattern: a variable name or a fixed term.
using PatternTerm = std::variant<std::string, Value>;

struct TriplePattern {
  PatternTerm subject;
  PathExpr path;
  PatternTerm object;
};

struct Projection {
  std::string var;
  ExprPtr expr;  // null for a plain variable projection
};

struct WhereElement {
  enum class Kind { Pattern, Filter, Bind };
  Kind kind = Kind::Pattern;
  TriplePattern pattern;
  ExprPtr expr;         // Filter/Bind
  std::string bind_var;  // Bind
};

struct QueryAst {
  PrefixTable prefixes;
  std::vector<Projection> projection;
  std::vector<WhereElement> where;
  std::vector<std::string> group_by;

  QueryAst() : prefixes(PrefixTable::builtin()) {}
  bool has_aggregates() const;
};

// Parses the supported SPARQL subset (SELECT, basic graph patterns with
// property paths, FILTER, BIND, GROUP BY, COUNT/SUM/GROUP_CONCAT, IF and
// arithmetic). Everything else raises UnsupportedFeature with the construct
// name.
QueryAst parse_query(std::string_view text);

// Immutable term-indexed triple table.
class FrozenGraph {
 public:
  explicit FrozenGraph(const LinkedDocument& doc);
  explicit FrozenGraph(const std::vector<Triple>& triples);

  static constexpr std::uint32_t kNone = 0xffffffffu;

  std::uint32_t term_id(const Value& value) const;  // kNone when absent
  const Value& term(std::uint32_t id) const { return terms_[id]; }
  bool is_iri(std::uint32_t id) const { return is_ref(terms_[id]); }
  std::size_t term_count() const { return terms_.size(); }

  // edges of one predicate, sorted by (subject, object) / (object, subject)
  using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  const EdgeList* edges_so(std::uint32_t pred) const;
  const EdgeList* edges_os(std::uint32_t pred) const;

  const std::vector<std::uint32_t>& iri_terms() const { return iris_; }
  const std::vector<std::uint32_t>& predicates() const { return preds_; }

 private:
  void index(const std::vector<Triple>& triples);
  std::uint32_t intern(const Value& value);

  std::vector<Value> terms_;
  std::unordered_map<std::string, std::uint32_t> by_key_;
  std::unordered_map<std::uint32_t, EdgeList> so_, os_;
  std::vector<std::uint32_t> iris_;
  std::vector<std::uint32_t> preds_;
};

// Exact reachable set over the path from `start`: sequence is relational
// composition, alternation is union, * is the reflexive-transitive closure.
std::set<Iri> eval_path(const FrozenGraph& graph, const Iri& start,
                        const PathExpr& path);

struct SolutionTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<Value>>> rows;

  std::string to_csv() const;
  std::string to_table() const;
  std::string to_json() const;
};

SolutionTable evaluate(const FrozenGraph& graph, const QueryAst& ast);
SolutionTable evaluate(const LinkedDocument& doc, const QueryAst& ast);

// Arbitrary-precision-enough decimal used by the evaluator: division rounds
// to 12 significant digits, half to even.
class Decimal {
 public:
  Decimal() = default;
  static Decimal parse(std::string_view lexical);
  static Decimal from_int(std::int64_t v);

  Decimal add(const Decimal& other) const;
  Decimal sub(const Decimal& other) const;
  Decimal mul(const Decimal& other) const;
  Decimal div(const Decimal& other) const;  // throws EvaluationError on /0
  int compare(const Decimal& other) const;

  std::string str() const;  // canonical xsd:decimal lexical form

 private:
  static Decimal make(__int128 mantissa, int exponent);
  __int128 mantissa_ = 0;
  int exponent_ = 0;
};

}  // namespace fairprov

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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fairprov/vocab.hpp"

namespace fairprov {

// Typed literal. The lexical form is validated against the datatype and
// normalized on construction (canonical integers/decimals, dateTime in UTC
// "Z" form), so equality of literals is equality of lexical forms.
struct LiteralValue {
  std::string lexical;
  ObjectKind datatype = ObjectKind::String;  // never NodeRef

  static LiteralValue str(std::string s);
  static LiteralValue integer(std::int64_t v);
  static LiteralValue boolean(bool v);
  static LiteralValue decimal(std::string_view lexical);
  static LiteralValue date_time(std::string_view iso8601);
  static LiteralValue make(std::string_view lexical, ObjectKind kind);

  friend bool operator==(const LiteralValue&, const LiteralValue&) = default;
  friend auto operator<=>(const LiteralValue&, const LiteralValue&) = default;
};

using Value = std::variant<Iri, LiteralValue>;

bool is_ref(const Value& v);
// Plain text of a value: the IRI, or the literal lexical form.
std::string display_string(const Value& v);
// Discriminated form, collision-free between references and literals.
std::string key_string(const Value& v);
bool value_less(const Value& a, const Value& b);

struct Triple {
  Iri subject;
  Iri predicate;
  Value object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

bool triple_less(const Triple& a, const Triple& b);

struct NodeObject {
  Iri id;
  std::vector<Iri> types;                        // insertion order, unique
  std::map<Iri, std::vector<Value>> properties;  // value lists ordered, unique

  void add_type(const Iri& type);
  bool has_type(const Iri& type) const;
  void add(const Iri& predicate, Value v);  // drops duplicate (pred, value)
  void set(const Iri& predicate, Value v);  // replaces the whole list
  const std::vector<Value>* get(const Iri& predicate) const;
  std::optional<Value> first(const Iri& predicate) const;
  void remove(const Iri& predicate);
  void remove_value(const Iri& predicate, const Value& v);
  void canonicalize();  // sort types and value lists
};

struct LinkedDocument {
  PrefixTable context;
  std::map<Iri, NodeObject> nodes;

  LinkedDocument() : context(PrefixTable::builtin()) {}

  NodeObject& node(const Iri& id);  // get-or-create
  const NodeObject* find(const Iri& id) const;
  NodeObject* find(const Iri& id);
  bool empty() const { return nodes.empty(); }
};

// Predicates treated as single-valued when merging documents.
bool is_functional_property(const Iri& predicate);

// One rdf:type triple per (node, type) pair plus one triple per
// (node, predicate, value). Sorted, duplicate-free, no blank nodes.
std::vector<Triple> to_triples(const LinkedDocument& doc);

LinkedDocument from_triples(const std::vector<Triple>& triples,
                            PrefixTable context);

// Canonical JSON-LD bytes: one @context, flat @graph, nodes sorted by id,
// properties sorted by predicate, values in insertion order. Byte-identical
// across calls for equal logical content.
std::string serialize(const LinkedDocument& doc);

// Parses the toolkit's JSON-LD profile (single context, flat node array).
LinkedDocument parse(std::string_view bytes);

// Union of the documents. Nodes with equal id are unioned and canonicalized;
// throws ConflictingFunctionalValue when single-valued properties disagree.
LinkedDocument merge(std::vector<LinkedDocument> docs);

// ISO 8601 instant helpers (UTC).
std::int64_t parse_instant_utc(std::string_view iso);  // throws MalformedInput
std::string format_instant_utc(std::int64_t epoch_seconds);

}  // namespace fairprov

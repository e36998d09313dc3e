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

#include "fairprov/ldgraph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include <json.hpp>

namespace fairprov {

namespace {

using ordered_json = nlohmann::ordered_json;

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
           return c >= '0' && c <= '9';
         });
}

std::string canonical_integer(std::string_view lexical) {
  std::string_view s = lexical;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw MalformedInput("not an integer: \"" + std::string(lexical) + "\"");
  std::size_t nz = s.find_first_not_of('0');
  if (nz == std::string_view::npos) return "0";
  std::string digits(s.substr(nz));
  // toolkit profile keeps integers within int64
  std::int64_t parsed = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                   parsed);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw MalformedInput("integer out of range: \"" + std::string(lexical) +
                         "\"");
  return negative ? "-" + digits : digits;
}

std::string canonical_decimal(std::string_view lexical) {
  std::string_view s = lexical;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string_view int_part = dot == std::string_view::npos ? s : s.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty())
    throw MalformedInput("not a decimal: \"" + std::string(lexical) + "\"");
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part)))
    throw MalformedInput("not a decimal: \"" + std::string(lexical) + "\"");

  std::size_t nz = int_part.find_first_not_of('0');
  std::string ip = nz == std::string_view::npos ? "0" : std::string(int_part.substr(nz));
  std::size_t last = frac_part.find_last_not_of('0');
  std::string fp = last == std::string_view::npos ? "0" : std::string(frac_part.substr(0, last + 1));
  if (ip == "0" && fp == "0") return "0.0";
  return (negative ? "-" : "") + ip + "." + fp;
}

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
}

struct Instant {
  std::int64_t epoch_seconds = 0;
  std::string fraction;  // digits after the second, trailing zeros stripped
};

int read_fixed(std::string_view s, std::size_t pos, int width) {
  if (pos + width > s.size()) throw MalformedInput("truncated dateTime");
  int v = 0;
  for (int i = 0; i < width; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') throw MalformedInput("bad digit in dateTime");
    v = v * 10 + (c - '0');
  }
  return v;
}

Instant parse_instant(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS(.f+)?(Z|±HH:MM)
  auto expect = [&s](std::size_t pos, char c) {
    if (pos >= s.size() || s[pos] != c)
      throw MalformedInput("not an ISO 8601 dateTime: \"" + std::string(s) + "\"");
  };
  try {
    int year = read_fixed(s, 0, 4);
    expect(4, '-');
    int month = read_fixed(s, 5, 2);
    expect(7, '-');
    int day = read_fixed(s, 8, 2);
    expect(10, 'T');
    int hour = read_fixed(s, 11, 2);
    expect(13, ':');
    int minute = read_fixed(s, 14, 2);
    expect(16, ':');
    int second = read_fixed(s, 17, 2);
    std::size_t pos = 19;
    std::string fraction;
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      std::size_t start = pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      if (pos == start) throw MalformedInput("empty fraction in dateTime");
      fraction = std::string(s.substr(start, pos - start));
      while (!fraction.empty() && fraction.back() == '0') fraction.pop_back();
    }
    std::int64_t offset = 0;
    if (pos >= s.size()) throw MalformedInput("dateTime missing UTC offset");
    if (s[pos] == 'Z') {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      int sign = s[pos] == '-' ? -1 : 1;
      int oh = read_fixed(s, pos + 1, 2);
      expect(pos + 3, ':');
      int om = read_fixed(s, pos + 4, 2);
      offset = sign * (oh * 3600 + om * 60);
      pos += 6;
    } else {
      throw MalformedInput("dateTime missing UTC offset");
    }
    if (pos != s.size()) throw MalformedInput("trailing input after dateTime");
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 ||
        minute > 59 || second > 60)
      throw MalformedInput("dateTime field out of range: \"" + std::string(s) + "\"");
    std::int64_t sy;
    unsigned sm, sd;
    std::int64_t days = days_from_civil(year, month, day);
    civil_from_days(days, sy, sm, sd);
    if (sy != year || sm != static_cast<unsigned>(month) ||
        sd != static_cast<unsigned>(day))
      throw MalformedInput("invalid calendar date: \"" + std::string(s) + "\"");
    Instant out;
    out.epoch_seconds =
        days * 86400 + hour * 3600 + minute * 60 + second - offset;
    out.fraction = std::move(fraction);
    return out;
  } catch (const MalformedInput&) {
    throw;
  }
}

std::string format_instant(const Instant& in) {
  std::int64_t days = in.epoch_seconds / 86400;
  std::int64_t rem = in.epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lld",
                static_cast<long long>(y), m, d,
                static_cast<long long>(rem / 3600),
                static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  std::string out(buf);
  if (!in.fraction.empty()) out += "." + in.fraction;
  out += "Z";
  return out;
}

}  // namespace

std::int64_t parse_instant_utc(std::string_view iso) {
  return parse_instant(iso).epoch_seconds;
}

std::string format_instant_utc(std::int64_t epoch_seconds) {
  return format_instant(Instant{epoch_seconds, {}});
}

LiteralValue LiteralValue::str(std::string s) {
  return LiteralValue{std::move(s), ObjectKind::String};
}

LiteralValue LiteralValue::integer(std::int64_t v) {
  return LiteralValue{std::to_string(v), ObjectKind::Integer};
}

LiteralValue LiteralValue::boolean(bool v) {
  return LiteralValue{v ? "true" : "false", ObjectKind::Boolean};
}

LiteralValue LiteralValue::decimal(std::string_view lexical) {
  return LiteralValue{canonical_decimal(lexical), ObjectKind::Decimal};
}

LiteralValue LiteralValue::date_time(std::string_view iso8601) {
  return LiteralValue{format_instant(parse_instant(iso8601)),
                      ObjectKind::DateTime};
}

LiteralValue LiteralValue::make(std::string_view lexical, ObjectKind kind) {
  switch (kind) {
    case ObjectKind::String:
      return str(std::string(lexical));
    case ObjectKind::Integer:
      return LiteralValue{canonical_integer(lexical), ObjectKind::Integer};
    case ObjectKind::Decimal:
      return decimal(lexical);
    case ObjectKind::Boolean:
      if (lexical == "true" || lexical == "false")
        return LiteralValue{std::string(lexical), ObjectKind::Boolean};
      throw MalformedInput("not a boolean: \"" + std::string(lexical) + "\"");
    case ObjectKind::DateTime:
      return date_time(lexical);
    case ObjectKind::NodeRef:
      break;
  }
  throw MalformedInput("node-reference is not a literal kind");
}

bool is_ref(const Value& v) { return std::holds_alternative<Iri>(v); }

std::string display_string(const Value& v) {
  if (is_ref(v)) return std::get<Iri>(v).str();
  return std::get<LiteralValue>(v).lexical;
}

std::string key_string(const Value& v) {
  if (is_ref(v)) return "R " + std::get<Iri>(v).str();
  const auto& lit = std::get<LiteralValue>(v);
  return "L" + std::to_string(static_cast<int>(lit.datatype)) + " " +
         lit.lexical;
}

bool value_less(const Value& a, const Value& b) { return a < b; }

bool triple_less(const Triple& a, const Triple& b) {
  if (a.subject != b.subject) return a.subject < b.subject;
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  return a.object < b.object;
}

void NodeObject::add_type(const Iri& type) {
  if (!has_type(type)) types.push_back(type);
}

bool NodeObject::has_type(const Iri& type) const {
  return std::find(types.begin(), types.end(), type) != types.end();
}

void NodeObject::add(const Iri& predicate, Value v) {
  auto& list = properties[predicate];
  if (std::find(list.begin(), list.end(), v) == list.end())
    list.push_back(std::move(v));
}

void NodeObject::set(const Iri& predicate, Value v) {
  properties[predicate] = {std::move(v)};
}

const std::vector<Value>* NodeObject::get(const Iri& predicate) const {
  auto it = properties.find(predicate);
  return it == properties.end() ? nullptr : &it->second;
}

std::optional<Value> NodeObject::first(const Iri& predicate) const {
  const auto* list = get(predicate);
  if (!list || list->empty()) return std::nullopt;
  return list->front();
}

void NodeObject::remove(const Iri& predicate) { properties.erase(predicate); }

void NodeObject::remove_value(const Iri& predicate, const Value& v) {
  auto it = properties.find(predicate);
  if (it == properties.end()) return;
  auto& list = it->second;
  list.erase(std::remove(list.begin(), list.end(), v), list.end());
  if (list.empty()) properties.erase(it);
}

void NodeObject::canonicalize() {
  std::sort(types.begin(), types.end());
  for (auto& [pred, list] : properties) std::sort(list.begin(), list.end());
}

NodeObject& LinkedDocument::node(const Iri& id) {
  auto [it, inserted] = nodes.try_emplace(id);
  if (inserted) it->second.id = id;
  return it->second;
}

const NodeObject* LinkedDocument::find(const Iri& id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

NodeObject* LinkedDocument::find(const Iri& id) {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

bool is_functional_property(const Iri& predicate) {
  const auto& v = Vocab::get();
  return predicate == v.dct_identifier || predicate == v.rv_success ||
         predicate == v.prov_startedAtTime || predicate == v.prov_endedAtTime;
}

std::vector<Triple> to_triples(const LinkedDocument& doc) {
  const auto& v = Vocab::get();
  std::vector<Triple> out;
  for (const auto& [id, node] : doc.nodes) {
    for (const auto& type : node.types)
      out.push_back(Triple{id, v.rdf_type, Value(type)});
    for (const auto& [pred, values] : node.properties)
      for (const auto& value : values) out.push_back(Triple{id, pred, value});
  }
  std::sort(out.begin(), out.end(), triple_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LinkedDocument from_triples(const std::vector<Triple>& triples,
                            PrefixTable context) {
  const auto& v = Vocab::get();
  LinkedDocument doc;
  doc.context = std::move(context);
  std::vector<Triple> sorted = triples;
  std::sort(sorted.begin(), sorted.end(), triple_less);
  for (const auto& t : sorted) {
    if (t.subject.str().starts_with("_:"))
      throw BlankNodeUnsupported("blank subject " + t.subject.str());
    if (is_ref(t.object) && std::get<Iri>(t.object).str().starts_with("_:"))
      throw BlankNodeUnsupported("blank object in " + t.subject.str());
    auto& node = doc.node(t.subject);
    if (t.predicate == v.rdf_type && is_ref(t.object))
      node.add_type(std::get<Iri>(t.object));
    else
      node.add(t.predicate, t.object);
  }
  return doc;
}

namespace {

std::string base_with_slash(const PrefixTable& context) {
  if (!context.base()) return {};
  std::string b = context.base()->str();
  while (!b.empty() && b.back() == '/') b.pop_back();
  return b + "/";
}

std::string encode_id(const LinkedDocument& doc, const std::string& base_slash,
                      const Iri& id) {
  if (!base_slash.empty() && id.str().size() > base_slash.size() &&
      id.str().compare(0, base_slash.size(), base_slash) == 0)
    return id.str().substr(base_slash.size());
  return doc.context.compact_str(id);
}

ordered_json encode_value(const LinkedDocument& doc,
                          const std::string& base_slash, const Value& value) {
  if (is_ref(value)) {
    ordered_json o;
    o["@id"] = encode_id(doc, base_slash, std::get<Iri>(value));
    return o;
  }
  const auto& lit = std::get<LiteralValue>(value);
  switch (lit.datatype) {
    case ObjectKind::String:
      return ordered_json(lit.lexical);
    case ObjectKind::Boolean:
      return ordered_json(lit.lexical == "true");
    case ObjectKind::Integer: {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(
          lit.lexical.data(), lit.lexical.data() + lit.lexical.size(), v);
      (void)ptr;
      (void)ec;
      return ordered_json(v);
    }
    case ObjectKind::Decimal: {
      ordered_json o;
      o["@value"] = lit.lexical;
      o["@type"] = "xsd:decimal";
      return o;
    }
    case ObjectKind::DateTime: {
      ordered_json o;
      o["@value"] = lit.lexical;
      o["@type"] = "xsd:dateTime";
      return o;
    }
    case ObjectKind::NodeRef:
      break;
  }
  throw MalformedInput("unencodable value");
}

}  // namespace

std::string serialize(const LinkedDocument& doc) {
  std::string base_slash = base_with_slash(doc.context);
  ordered_json ctx;
  if (!base_slash.empty()) ctx["@base"] = base_slash;
  for (const auto& [prefix, base] : doc.context.entries())
    ctx[prefix] = base.str();

  ordered_json graph = ordered_json::array();
  for (const auto& [id, node] : doc.nodes) {
    ordered_json jn;
    jn["@id"] = encode_id(doc, base_slash, id);
    if (!node.types.empty()) {
      ordered_json types = ordered_json::array();
      for (const auto& t : node.types)
        types.push_back(doc.context.compact_str(t));
      jn["@type"] = types;
    }
    for (const auto& [pred, values] : node.properties) {
      ordered_json arr = ordered_json::array();
      for (const auto& value : values)
        arr.push_back(encode_value(doc, base_slash, value));
      jn[doc.context.compact_str(pred)] = arr;
    }
    graph.push_back(std::move(jn));
  }

  ordered_json root;
  root["@context"] = std::move(ctx);
  root["@graph"] = std::move(graph);
  return root.dump(1, ' ') + "\n";
}

namespace {

bool looks_prefixed(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  auto slash = s.find('/');
  return slash == std::string_view::npos || colon < slash;
}

Iri resolve_iri(const LinkedDocument& doc, const std::string& s) {
  if (s.starts_with("_:"))
    throw UnsupportedJsonLdFeature("blank node \"" + s + "\"");
  if (looks_prefixed(s)) {
    Term t = Term::parse(s);
    if (doc.context.has(t.prefix)) return doc.context.expand(t);
    return Iri(s);  // absolute IRI with an unregistered scheme-like prefix
  }
  if (!doc.context.base())
    throw MalformedInput("relative id \"" + s + "\" without @base");
  std::string b = doc.context.base()->str();
  while (!b.empty() && b.back() == '/') b.pop_back();
  return Iri(b + "/" + s);
}

ObjectKind datatype_from_iri(const Iri& dt) {
  const auto& v = Vocab::get();
  if (dt == v.xsd_string) return ObjectKind::String;
  if (dt == v.xsd_integer) return ObjectKind::Integer;
  if (dt == v.xsd_decimal) return ObjectKind::Decimal;
  if (dt == v.xsd_boolean) return ObjectKind::Boolean;
  if (dt == v.xsd_dateTime) return ObjectKind::DateTime;
  throw UnsupportedJsonLdFeature("datatype " + dt.str());
}

void parse_node_value(LinkedDocument& doc, NodeObject& node, const Iri& pred,
                      const ordered_json& jv) {
  if (jv.is_object()) {
    if (jv.contains("@value")) {
      ObjectKind kind = ObjectKind::String;
      std::string lexical;
      const auto& raw = jv["@value"];
      if (raw.is_string()) {
        lexical = raw.get<std::string>();
      } else if (raw.is_boolean()) {
        lexical = raw.get<bool>() ? "true" : "false";
        kind = ObjectKind::Boolean;
      } else if (raw.is_number_integer()) {
        lexical = std::to_string(raw.get<std::int64_t>());
        kind = ObjectKind::Integer;
      } else {
        throw MalformedInput("unsupported @value type");
      }
      for (const auto& [k, unused] : jv.items()) {
        (void)unused;
        if (k == "@value" || k == "@type") continue;
        if (k == "@language")
          throw UnsupportedJsonLdFeature("@language literals");
        throw MalformedInput("unexpected key \"" + k + "\" in value object");
      }
      if (jv.contains("@type"))
        kind = datatype_from_iri(
            resolve_iri(doc, jv["@type"].get<std::string>()));
      node.add(pred, Value(LiteralValue::make(lexical, kind)));
      return;
    }
    if (jv.contains("@id")) {
      if (jv.size() != 1)
        throw UnsupportedJsonLdFeature("nested node objects");
      node.add(pred, Value(resolve_iri(doc, jv["@id"].get<std::string>())));
      return;
    }
    throw UnsupportedJsonLdFeature("nested node objects");
  }
  if (jv.is_string()) {
    std::optional<ObjectKind> kind;
    try {
      kind = TermCatalog::builtin().object_kind(pred);
    } catch (const UnknownProperty&) {
      kind = ObjectKind::String;  // foreign predicate, kept as a plain string
    }
    if (!kind) kind = ObjectKind::String;  // custom-namespace passthrough
    if (*kind == ObjectKind::NodeRef)
      node.add(pred, Value(resolve_iri(doc, jv.get<std::string>())));
    else
      node.add(pred, Value(LiteralValue::make(jv.get<std::string>(), *kind)));
    return;
  }
  if (jv.is_boolean()) {
    node.add(pred, Value(LiteralValue::boolean(jv.get<bool>())));
    return;
  }
  if (jv.is_number_integer()) {
    node.add(pred, Value(LiteralValue::integer(jv.get<std::int64_t>())));
    return;
  }
  if (jv.is_number_float())
    throw MalformedInput(
        "floating point JSON numbers are not part of the profile; use a "
        "typed xsd:decimal @value");
  throw MalformedInput("unsupported value for predicate " + pred.str());
}

void parse_node(LinkedDocument& doc, const ordered_json& jn) {
  const auto& v = Vocab::get();
  if (!jn.is_object()) throw MalformedInput("@graph entries must be objects");
  if (!jn.contains("@id") || !jn["@id"].is_string())
    throw UnsupportedJsonLdFeature("anonymous (blank) node");
  Iri id = resolve_iri(doc, jn["@id"].get<std::string>());
  NodeObject& node = doc.node(id);
  for (const auto& [key, value] : jn.items()) {
    if (key == "@id") continue;
    if (key == "@type") {
      if (value.is_string()) {
        node.add_type(resolve_iri(doc, value.get<std::string>()));
      } else if (value.is_array()) {
        for (const auto& t : value) {
          if (!t.is_string()) throw MalformedInput("@type must be strings");
          node.add_type(resolve_iri(doc, t.get<std::string>()));
        }
      } else {
        throw MalformedInput("@type must be a string or array");
      }
      continue;
    }
    if (key == "@graph") throw UnsupportedJsonLdFeature("nested @graph");
    if (key == "@reverse") throw UnsupportedJsonLdFeature("reverse properties");
    if (key == "@context") throw UnsupportedJsonLdFeature("multiple contexts");
    if (key.starts_with("@")) throw UnsupportedJsonLdFeature(key);
    if (!looks_prefixed(key))
      throw MalformedInput("predicate \"" + key + "\" has no prefix");
    Iri pred = resolve_iri(doc, key);
    auto add_one = [&](const ordered_json& jv) {
      if (pred == v.rdf_type) {
        if (jv.is_string()) {
          node.add_type(resolve_iri(doc, jv.get<std::string>()));
          return;
        }
        if (jv.is_object() && jv.contains("@id") && jv.size() == 1) {
          node.add_type(resolve_iri(doc, jv["@id"].get<std::string>()));
          return;
        }
      }
      parse_node_value(doc, node, pred, jv);
    };
    if (value.is_array()) {
      if (value.empty())
        throw MalformedInput("empty value list for " + pred.str());
      for (const auto& jv : value) add_one(jv);
    } else {
      add_one(value);
    }
  }
}

}  // namespace

LinkedDocument parse(std::string_view bytes) {
  ordered_json j;
  try {
    j = ordered_json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(e.what());
  }
  if (!j.is_object())
    throw MalformedInput("top level must be a JSON object");

  LinkedDocument doc;
  if (j.contains("@context")) {
    const auto& ctx = j["@context"];
    if (ctx.is_array()) throw UnsupportedJsonLdFeature("multiple contexts");
    if (!ctx.is_object()) throw MalformedInput("@context must be an object");
    for (const auto& [key, value] : ctx.items()) {
      if (!value.is_string())
        throw MalformedInput("@context entries must be strings");
      if (key == "@base") {
        std::string b = value.get<std::string>();
        while (!b.empty() && b.back() == '/') b.pop_back();
        doc.context.set_base(Iri(b));
      } else if (key.starts_with("@")) {
        throw UnsupportedJsonLdFeature("@context key " + key);
      } else {
        doc.context.add(key, Iri(value.get<std::string>()));
      }
    }
  }
  if (!j.contains("@graph")) throw MalformedInput("missing @graph");
  const auto& graph = j["@graph"];
  if (!graph.is_array()) throw MalformedInput("@graph must be an array");
  for (const auto& [key, unused] : j.items()) {
    (void)unused;
    if (key != "@context" && key != "@graph")
      throw MalformedInput("unexpected top-level key \"" + key + "\"");
  }
  for (const auto& jn : graph) parse_node(doc, jn);
  return doc;
}

LinkedDocument merge(std::vector<LinkedDocument> docs) {
  LinkedDocument out;
  for (auto& doc : docs) {
    if (doc.context.base()) {
      if (!out.context.base()) {
        out.context.set_base(*doc.context.base());
      } else if (*out.context.base() != *doc.context.base()) {
        throw MalformedInput("documents have incompatible @base values");
      }
    }
    for (const auto& [prefix, base] : doc.context.entries()) {
      if (out.context.has(prefix)) {
        if (out.context.entries().at(prefix) != base)
          throw MalformedInput("conflicting expansion for prefix \"" + prefix +
                               "\"");
      } else {
        out.context.add(prefix, base);
      }
    }
    for (auto& [id, node] : doc.nodes) {
      NodeObject& target = out.node(id);
      for (const auto& t : node.types) target.add_type(t);
      for (auto& [pred, values] : node.properties)
        for (auto& value : values) target.add(pred, std::move(value));
    }
  }
  for (auto& [id, node] : out.nodes) {
    node.canonicalize();
    for (const auto& [pred, values] : node.properties) {
      if (values.size() > 1 && is_functional_property(pred))
        throw ConflictingFunctionalValue(
            "node " + id.str() + " carries " + std::to_string(values.size()) +
            " values for single-valued " + pred.str());
    }
  }
  return out;
}

}  // namespace fairprov

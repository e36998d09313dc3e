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

#include "fairprov/identity.hpp"

#include <cctype>

namespace fairprov {

BaseIri::BaseIri(const std::string& value) {
  std::string v = value;
  while (!v.empty() && v.back() == '/') v.pop_back();
  if (!v.starts_with("https://"))
    throw InvalidIri("dataset base IRI must use https: \"" + value + "\"");
  value_ = Iri(v);
}

RelPath RelPath::parse(std::string_view path) {
  if (path.empty()) throw InvalidPath("empty path");
  if (path.front() == '/')
    throw InvalidPath("absolute path: \"" + std::string(path) + "\"");
  std::vector<std::string> segments;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto slash = path.find('/', start);
    std::string_view seg = slash == std::string_view::npos
                               ? path.substr(start)
                               : path.substr(start, slash - start);
    if (seg.empty())
      throw InvalidPath("empty segment in \"" + std::string(path) + "\"");
    if (seg == "." || seg == "..")
      throw InvalidPath("traversal segment in \"" + std::string(path) + "\"");
    segments.emplace_back(seg);
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return from_segments(std::move(segments));
}

RelPath RelPath::from_segments(std::vector<std::string> segments) {
  for (const auto& seg : segments)
    if (seg.empty() || seg == "." || seg == "..")
      throw InvalidPath("invalid segment \"" + seg + "\"");
  RelPath p;
  p.segments_ = std::move(segments);
  return p;
}

std::string RelPath::str() const {
  std::string out;
  for (const auto& seg : segments_) {
    if (!out.empty()) out += '/';
    out += seg;
  }
  return out;
}

RelPath RelPath::operator/(std::string_view segment) const {
  auto segs = segments_;
  segs.emplace_back(segment);
  return from_segments(std::move(segs));
}

std::string percent_encode_segment(std::string_view segment) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(segment.size());
  for (char c : segment) {
    auto b = static_cast<unsigned char>(c);
    bool unreserved = std::isalnum(b) || c == '-' || c == '.' || c == '_' ||
                      c == '~';
    if (unreserved) {
      out += c;
    } else {
      out += '%';
      out += kHex[b >> 4];
      out += kHex[b & 0xF];
    }
  }
  return out;
}

Iri mint_from_path(const BaseIri& base, const RelPath& path) {
  if (path.empty()) throw InvalidPath("empty relative path");
  std::string out = base.str();
  for (const auto& seg : path.segments()) {
    out += '/';
    out += percent_encode_segment(seg);
  }
  return Iri(out);
}

bool valid_orcid(const std::string& orcid) {
  // 0000-0000-0000-000X groups
  if (orcid.size() != 19) return false;
  for (std::size_t i = 0; i < orcid.size(); ++i) {
    if (i == 4 || i == 9 || i == 14) {
      if (orcid[i] != '-') return false;
    } else if (i == 18) {
      if (!std::isdigit(static_cast<unsigned char>(orcid[i])) &&
          orcid[i] != 'X')
        return false;
    } else if (!std::isdigit(static_cast<unsigned char>(orcid[i]))) {
      return false;
    }
  }
  // ISO 7064 mod 11-2 over the 15 base digits
  int total = 0;
  int seen = 0;
  for (char c : orcid) {
    if (c == '-') continue;
    if (seen == 15) break;
    total = (total + (c - '0')) * 2;
    ++seen;
  }
  int remainder = total % 11;
  int result = (12 - remainder) % 11;
  char expected = result == 10 ? 'X' : static_cast<char>('0' + result);
  return orcid.back() == expected;
}

Iri mint_person(const std::string& orcid) {
  if (!valid_orcid(orcid))
    throw InvalidOrcid("\"" + orcid + "\" fails the ORCID pattern or checksum");
  return Iri("https://orcid.org/" + orcid);
}

Iri run_identifier(const BaseIri& base, const RelPath& run_dir) {
  return mint_from_path(base, run_dir);
}

LiteralValue doi_identifier(const std::string& doi) {
  if (!doi.starts_with("10."))
    throw InvalidDoi("DOI must start with \"10.\": \"" + doi + "\"");
  auto slash = doi.find('/');
  if (slash == std::string::npos || slash + 1 >= doi.size())
    throw InvalidDoi("DOI missing suffix: \"" + doi + "\"");
  return LiteralValue::str("https://doi.org/" + doi);
}

}  // namespace fairprov

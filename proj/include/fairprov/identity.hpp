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

#include <string>
#include <string_view>
#include <vector>

#include "fairprov/ldgraph.hpp"

namespace fairprov {

// Dataset PURL. https only; trailing slashes are stripped on input.
class BaseIri {
 public:
  explicit BaseIri(const std::string& value);
  const Iri& iri() const noexcept { return value_; }
  const std::string& str() const noexcept { return value_.str(); }

  friend bool operator==(const BaseIri&, const BaseIri&) = default;

 private:
  Iri value_;
};

// Path relative to the campaign results folder; '/' separated, no empty,
// "." or ".." segments.
class RelPath {
 public:
  RelPath() = default;
  static RelPath parse(std::string_view path);  // throws InvalidPath
  static RelPath from_segments(std::vector<std::string> segments);

  const std::vector<std::string>& segments() const noexcept {
    return segments_;
  }
  std::string str() const;
  bool empty() const noexcept { return segments_.empty(); }
  RelPath operator/(std::string_view segment) const;

  friend bool operator==(const RelPath&, const RelPath&) = default;
  friend auto operator<=>(const RelPath&, const RelPath&) = default;

 private:
  std::vector<std::string> segments_;
};

// base + "/" + percent-encoded segments. Injective over normalized paths.
Iri mint_from_path(const BaseIri& base, const RelPath& path);

// ORCID identifier IRI; validates the pattern and ISO 7064 mod 11-2 checksum.
Iri mint_person(const std::string& orcid);
bool valid_orcid(const std::string& orcid);

// Deterministic test-run identifier; equal to mint_from_path(base, run_dir).
Iri run_identifier(const BaseIri& base, const RelPath& run_dir);

// String literal "https://doi.org/" + doi.
LiteralValue doi_identifier(const std::string& doi);

std::string percent_encode_segment(std::string_view segment);

}  // namespace fairprov

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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fairprov/capture.hpp"

namespace fairprov {

// Stable rule identifiers carried on violations.
namespace rules {
inline constexpr const char* kMultiplicity = "multiplicity";
inline constexpr const char* kTypeDiscipline = "type-discipline";
inline constexpr const char* kProvenanceChain = "provenance-chain";
inline constexpr const char* kDerivationGeneration = "derivation-generation";
inline constexpr const char* kResidency = "residency";
inline constexpr const char* kFunctional = "functional";
inline constexpr const char* kPersonId = "person-id";
inline constexpr const char* kLoadConfig = "load-config";
}  // namespace rules

struct Violation {
  std::string rule;
  Iri node;
  std::string message;
};

struct GraphReport {
  std::map<Iri, std::size_t> node_counts_by_type;
  std::size_t node_count = 0;
  std::size_t triple_count = 0;
  std::vector<Violation> violations;
};

// Builds the campaign provenance graph from the manifest, the scan result and
// the collector fragments. Deterministic: equal inputs give byte-identical
// serializations.
LinkedDocument build_graph(const CampaignManifest& manifest,
                           const ScanResult& scan,
                           std::vector<LinkedDocument> fragments);

// Structural and provenance-completeness checks. Violations are data, never
// exceptions.
GraphReport validate_graph(const LinkedDocument& doc);

// Node counts per type and the exact triple count.
GraphReport stats(const LinkedDocument& doc);

std::string render_stats(const GraphReport& report);

}  // namespace fairprov

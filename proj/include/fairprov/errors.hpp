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

#include <stdexcept>
#include <string>

namespace fairprov {

// Base of every toolkit error. `kind()` carries the stable error name so
// callers can match on it without RTTI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define FAIRPROV_DEFINE_ERROR(NAME)                            \
  class NAME : public Error {                                  \
   public:                                                     \
    explicit NAME(const std::string& message)                  \
        : Error(#NAME, message) {}                             \
  }

// vocab
FAIRPROV_DEFINE_ERROR(UnknownPrefix);
FAIRPROV_DEFINE_ERROR(UnknownProperty);
FAIRPROV_DEFINE_ERROR(InvalidIri);

// ldgraph
FAIRPROV_DEFINE_ERROR(MalformedInput);
FAIRPROV_DEFINE_ERROR(UnsupportedJsonLdFeature);
FAIRPROV_DEFINE_ERROR(BlankNodeUnsupported);
FAIRPROV_DEFINE_ERROR(ConflictingFunctionalValue);

// identity
FAIRPROV_DEFINE_ERROR(InvalidPath);
FAIRPROV_DEFINE_ERROR(InvalidOrcid);
FAIRPROV_DEFINE_ERROR(InvalidDoi);

// capture
FAIRPROV_DEFINE_ERROR(MissingRequiredField);
FAIRPROV_DEFINE_ERROR(MalformedManifest);
FAIRPROV_DEFINE_ERROR(MalformedReport);
FAIRPROV_DEFINE_ERROR(MissingTimestamp);
FAIRPROV_DEFINE_ERROR(DuplicatePlugin);

// consolidate
FAIRPROV_DEFINE_ERROR(ConsolidationConflict);
FAIRPROV_DEFINE_ERROR(MissingMandatoryEdge);

// queryengine
FAIRPROV_DEFINE_ERROR(SyntaxError);
FAIRPROV_DEFINE_ERROR(UnsupportedFeature);
FAIRPROV_DEFINE_ERROR(TypeError);
FAIRPROV_DEFINE_ERROR(EvaluationError);

// publish
FAIRPROV_DEFINE_ERROR(EmptySelection);
FAIRPROV_DEFINE_ERROR(TemplateError);
FAIRPROV_DEFINE_ERROR(AuthError);
FAIRPROV_DEFINE_ERROR(ProtocolError);
FAIRPROV_DEFINE_ERROR(DigestMismatch);

// harness
FAIRPROV_DEFINE_ERROR(OutputNotEmpty);

#undef FAIRPROV_DEFINE_ERROR

}  // namespace fairprov

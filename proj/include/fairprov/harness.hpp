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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairprov/errors.hpp"

namespace fairprov {

// SplitMix64: the toolkit's pseudo-random source. Substreams for independent
// units are derived by remixing the campaign seed with stream keys, so
// per-run generation is order-independent yet fully reproducible.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // substream keyed by up to three coordinates
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t a,
                           std::uint64_t b = 0, std::uint64_t c = 0) {
    SplitMix64 s(seed);
    s.state ^= SplitMix64(a ^ 0x517cc1b727220a95ULL).next();
    s.state ^= SplitMix64(b ^ 0x2545f4914f6cdd1dULL).next();
    s.state ^= SplitMix64(c ^ 0x9e6c63d0876a9f4bULL).next();
    return s;
  }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

enum class FailureMode { AlwaysFail, FailKOfN, Probability, SpreadTotal };

// Selects configurations by grid coordinates; unset fields match everything.
struct FailureSelector {
  std::optional<int> map_index;
  std::optional<int> path_index;
  std::optional<int> density_index;
  std::optional<int> radius_index;

  bool matches(int m, int p, int d, int r) const {
    return (!map_index || *map_index == m) &&
           (!path_index || *path_index == p) &&
           (!density_index || *density_index == d) &&
           (!radius_index || *radius_index == r);
  }
};

struct FailureRule {
  FailureSelector selector;
  FailureMode mode = FailureMode::AlwaysFail;
  int k = 0;               // FailKOfN: failures per matching configuration
  double probability = 0;  // Probability
  int total = 0;           // SpreadTotal: exact failures over matching runs
};

struct HarnessConfig {
  std::uint64_t seed = 42;
  int n_maps = 5;
  int paths_per_map = 10;
  double path_length_m = 10.0;
  std::vector<double> densities{0.0, 0.2};  // obstacles per metre
  std::vector<double> radii_m{0.175, 0.22};
  int runs_per_config = 10;
  std::vector<FailureRule> failure_profile;
  std::string dataset_iri = "https://purl.org/robovast/nav-demo";
  std::string title = "Navigation Dataset";

  int n_configs() const {
    return n_maps * paths_per_map * static_cast<int>(densities.size()) *
           static_cast<int>(radii_m.size());
  }
  int n_runs() const { return n_configs() * runs_per_config; }
};

struct GenerateSummary {
  int n_configs = 0;
  int n_runs = 0;
  int n_failed = 0;
  double total_distance_m = 0;
};

// Writes a complete campaign results tree into out_dir (which must be empty
// or absent). Byte-identical for equal (config, seed).
GenerateSummary generate(const HarnessConfig& config,
                         const std::filesystem::path& out_dir);

// 200 configurations x 10 runs with a small seeded failure story.
HarnessConfig demo_profile();

// 400 configurations x 10 runs, 290 failures: one always-fail story of
// 8 configurations (80 runs), two 19-failures-per-pair stories (38 runs),
// and a seeded spread of the remaining 172.
HarnessConfig paper_profile();

// Per-run outcome plan (exposed for tests): outcome[config][run] == true
// means the run fails; cause tracks which rule produced it.
struct RunOutcome {
  bool fail = false;
  FailureMode cause = FailureMode::Probability;
};
std::vector<std::vector<RunOutcome>> plan_outcomes(const HarnessConfig&);

// Shortest fixed-point rendering that round-trips the value (locale-free).
std::string format_double(double value);
std::string format_fixed(double value, int decimals);

}  // namespace fairprov

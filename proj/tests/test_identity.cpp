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

#include <doctest.h>

#include <set>

#include "support/test_util.hpp"

using namespace fairprov;

TEST_CASE("mint_from_path joins base and encoded segments") {
  BaseIri base("https://purl.org/robovast-ds");
  CHECK(mint_from_path(base, RelPath::parse("configs/c_0007/runs/run_003"))
            .str() ==
        "https://purl.org/robovast-ds/configs/c_0007/runs/run_003");

  BaseIri ds("https://purl.org/ds");
  CHECK(mint_from_path(ds, RelPath::parse("maps/uni map.fpm")).str() ==
        "https://purl.org/ds/maps/uni%20map.fpm");

  CHECK_THROWS_AS(RelPath::parse("../escape"), InvalidPath);
  CHECK_THROWS_AS(RelPath::parse("/absolute"), InvalidPath);
  CHECK_THROWS_AS(RelPath::parse("a//b"), InvalidPath);
}

TEST_CASE("minting is idempotent and injective") {
  BaseIri base("https://purl.org/ds");
  auto a = mint_from_path(base, RelPath::parse("x/y"));
  auto b = mint_from_path(base, RelPath::parse("x/y"));
  CHECK(a == b);

  test_util::SplitMix64 rng(7);
  std::set<std::string> paths, iris;
  for (int i = 0; i < 500; ++i) {
    std::string p = "d" + std::to_string(rng.below(20)) + "/f" +
                    std::to_string(rng.below(100)) +
                    (rng.below(2) ? " x.txt" : ".txt");
    paths.insert(p);
    iris.insert(mint_from_path(base, RelPath::parse(p)).str());
  }
  CHECK(paths.size() == iris.size());
}

TEST_CASE("base IRIs normalize and require https") {
  CHECK(BaseIri("https://purl.org/ds/").str() == "https://purl.org/ds");
  CHECK_THROWS_AS(BaseIri("http://purl.org/ds"), InvalidIri);
}

TEST_CASE("mint_person validates ORCID checksums") {
  CHECK(mint_person("0000-0002-3873-4435").str() ==
        "https://orcid.org/0000-0002-3873-4435");
  CHECK(mint_person("0000-0003-1306-7880").str() ==
        "https://orcid.org/0000-0003-1306-7880");
  CHECK(valid_orcid("0009-0002-9215-1238"));
  CHECK(valid_orcid("0000-0002-2626-1538"));
  CHECK_THROWS_AS(mint_person("0000-0002-3873-443X"), InvalidOrcid);
  CHECK_THROWS_AS(mint_person("0000-0002-3873-4434"), InvalidOrcid);
  CHECK_THROWS_AS(mint_person("not-an-orcid"), InvalidOrcid);
}

TEST_CASE("run identifiers are deterministic and distinct") {
  BaseIri base("https://purl.org/ds");
  auto r1 = run_identifier(base, RelPath::parse("configs/c_0000/runs/run_000"));
  auto r2 = run_identifier(base, RelPath::parse("configs/c_0000/runs/run_000"));
  auto r3 = run_identifier(base, RelPath::parse("configs/c_0000/runs/run_001"));
  CHECK(r1 == r2);
  CHECK(r1 != r3);
  CHECK(r1 == mint_from_path(base, RelPath::parse("configs/c_0000/runs/run_000")));
}

TEST_CASE("doi_identifier builds the resolver literal") {
  auto lit = doi_identifier("10.5281/zenodo.18702398");
  CHECK(lit.lexical == "https://doi.org/10.5281/zenodo.18702398");
  CHECK(lit.datatype == ObjectKind::String);
  CHECK(doi_identifier("10.1000/x").lexical == "https://doi.org/10.1000/x");
  CHECK_THROWS_AS(doi_identifier("zenodo.123"), InvalidDoi);
  CHECK_THROWS_AS(doi_identifier("10.5281"), InvalidDoi);
}

// tests/cli_test.cc

// Copyright 2026  dpa authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "dpa/reports.h"
#include "testutil.h"

namespace {

std::string cli_path() {
  const char* path = std::getenv("DPA_CLI");
  REQUIRE_MESSAGE(path != nullptr, "DPA_CLI must point at the dpa binary");
  return path;
}

int run(const std::string& args) {
  const std::string command = cli_path() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("") == 2);
  CHECK(run("no-such-subcommand") == 2);
  CHECK(run("evaluate --manifest x.csv") == 2);  // --out missing
  CHECK(run("evaluate --manifest x.csv --out y --classifier forest") == 2);
}

TEST_CASE("data errors exit with 3") {
  dpa::test::TempDir dir("cli-data");
  CHECK(run("features --manifest " + dir.file("absent.csv") + " --out " + dir.file("out")) == 3);

  const std::string bad_manifest = dir.file("bad.csv");
  {
    std::ofstream f(bad_manifest);
    f << "path,weight_g,duration_s\nmissing.wav,0,1\n";
  }
  CHECK(run("features --manifest " + bad_manifest + " --out " + dir.file("out")) == 3);
}

TEST_CASE("synth then features then train then classify runs end to end") {
  dpa::test::TempDir dir("cli-e2e");
  const std::string corpus = dir.file("corpus");
  // 6 s per class keeps this a smoke test; the acceptance suite runs at scale.
  REQUIRE(run("synth --out " + corpus + " --duration 6 --seed 5") == 0);
  CHECK(std::filesystem::exists(corpus + "/manifest.csv"));
  CHECK(std::filesystem::exists(corpus + "/drone_000g.wav"));
  CHECK(std::filesystem::exists(corpus + "/drone_500g.wav"));
  CHECK(std::filesystem::exists(corpus + "/run.json"));

  const std::string feat = dir.file("features");
  REQUIRE(run("features --manifest " + corpus + "/manifest.csv --out " + feat + " --window 1") ==
          0);
  CHECK(std::filesystem::exists(feat + "/features.csv"));

  const std::string model = dir.file("model");
  REQUIRE(run("train --features " + feat + "/features.csv --out " + model + " --kernel 3") == 0);
  CHECK(std::filesystem::exists(model + "/model.json"));

  const std::string pred = dir.file("pred");
  REQUIRE(run("classify --model " + model + "/model.json --features " + feat +
              "/features.csv --out " + pred) == 0);
  CHECK(std::filesystem::exists(pred + "/predictions.csv"));
}

TEST_CASE("train plus classify reproduces evaluate's internal predictions") {
  dpa::test::TempDir dir("cli-equiv");
  const std::string corpus = dir.file("corpus");
  REQUIRE(run("synth --out " + corpus + " --duration 10 --seed 21") == 0);
  const std::string manifest = corpus + "/manifest.csv";

  const std::string eval_out = dir.file("eval");
  REQUIRE(run("evaluate --manifest " + manifest + " --out " + eval_out +
              " --window 1 --kernel 3") == 0);

  // Rebuild evaluate's chronological split from the features artifact, train
  // on the prefix rows and classify the rest; the CSV round-trips doubles
  // exactly, so the predictions must match byte for byte.
  const std::string feat = dir.file("features");
  REQUIRE(run("features --manifest " + manifest + " --out " + feat + " --window 1") == 0);
  const std::vector<dpa::FeatureInstance> all =
      dpa::read_features_csv(feat + "/features.csv");
  std::map<std::string, std::vector<dpa::FeatureInstance>> by_source;
  std::vector<std::string> order;
  for (const dpa::FeatureInstance& instance : all) {
    if (!by_source.contains(instance.source_id)) order.push_back(instance.source_id);
    by_source[instance.source_id].push_back(instance);
  }
  std::vector<dpa::FeatureInstance> train_rows, test_rows;
  for (const std::string& source : order) {
    const auto& rows = by_source[source];
    const auto n_train = static_cast<std::size_t>(std::ceil(0.7 * static_cast<double>(rows.size())));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      (i < n_train ? train_rows : test_rows).push_back(rows[i]);
    }
  }
  dpa::write_features_csv(dir.file("train.csv"), train_rows);
  dpa::write_features_csv(dir.file("test.csv"), test_rows);

  const std::string model = dir.file("model");
  REQUIRE(run("train --features " + dir.file("train.csv") + " --out " + model + " --kernel 3") ==
          0);
  const std::string pred = dir.file("pred");
  REQUIRE(run("classify --model " + model + "/model.json --features " + dir.file("test.csv") +
              " --out " + pred) == 0);

  std::ifstream a(eval_out + "/predictions.csv"), b(pred + "/predictions.csv");
  const std::string eval_preds((std::istreambuf_iterator<char>(a)),
                               std::istreambuf_iterator<char>());
  const std::string chain_preds((std::istreambuf_iterator<char>(b)),
                                std::istreambuf_iterator<char>());
  CHECK(eval_preds == chain_preds);
}

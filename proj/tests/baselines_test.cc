// tests/baselines_test.cc

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

#include <random>

#include "dpa/baselines.h"
#include "dpa/error.h"
#include "testutil.h"

using namespace dpa;

namespace {

FeatureInstance make_instance(std::vector<double> x, int label) {
  FeatureInstance instance;
  instance.coefficients = std::move(x);
  instance.payload_label = label;
  return instance;
}

void add_blob(LabeledDataset& data, const std::vector<double>& center, double sd, int n,
              int label, std::mt19937& rng) {
  std::normal_distribution<double> noise(0.0, sd);
  for (int i = 0; i < n; ++i) {
    std::vector<double> x(center.size());
    for (std::size_t d = 0; d < center.size(); ++d) x[d] = center[d] + noise(rng);
    data.instances.push_back(make_instance(std::move(x), label));
  }
}

LabeledDataset three_clusters(std::mt19937& rng, int per_class) {
  LabeledDataset data;
  add_blob(data, {0.0, 0.0}, 0.5, per_class, 0, rng);
  add_blob(data, {8.0, 0.0}, 0.5, per_class, 100, rng);
  add_blob(data, {0.0, 8.0}, 0.5, per_class, 200, rng);
  return data;
}

}  // namespace

TEST_CASE("gnb prefers the frequent class at the symmetric midpoint") {
  std::mt19937 rng(21);
  LabeledDataset data;
  add_blob(data, {-2.0, 0.0}, 1.0, 60, 100, rng);  // frequent class, higher label
  add_blob(data, {2.0, 0.0}, 1.0, 20, 0, rng);
  GnbModel model = train_gnb(data);
  // Force exact symmetry so only the priors differ.
  model.mean = {{2.0, 0.0}, {-2.0, 0.0}};
  model.var = {{1.0, 1.0}, {1.0, 1.0}};
  CHECK(predict_gnb(model, std::vector<double>{0.0, 0.0}) == 100);
}

TEST_CASE("gnb solves the separable oracle corpus") {
  std::mt19937 rng(22);
  const LabeledDataset train = three_clusters(rng, 50);
  const LabeledDataset test = three_clusters(rng, 20);
  const GnbModel model = train_gnb(train);
  for (const FeatureInstance& instance : test.instances) {
    CHECK(predict_gnb(model, instance.coefficients) == *instance.payload_label);
  }
}

TEST_CASE("gnb variance floor keeps single-sample classes usable") {
  LabeledDataset data;
  data.instances.push_back(make_instance({1.0, 2.0}, 0));
  data.instances.push_back(make_instance({5.0, 6.0}, 100));
  data.instances.push_back(make_instance({5.1, 6.1}, 100));
  const GnbModel model = train_gnb(data);
  CHECK(predict_gnb(model, std::vector<double>{1.0, 2.0}) == 0);
  CHECK(predict_gnb(model, std::vector<double>{5.0, 6.0}) == 100);
}

TEST_CASE("fine knn behavior") {
  SUBCASE("k = 1 returns the label of an exact training point") {
    std::mt19937 rng(23);
    const LabeledDataset data = three_clusters(rng, 10);
    const KnnModel model = train_knn(data, 1);
    for (const FeatureInstance& instance : data.instances) {
      CHECK(predict_knn(model, instance.coefficients) == *instance.payload_label);
    }
  }
  SUBCASE("k = 3 majority wins a 2-vs-1 neighborhood") {
    LabeledDataset data;
    data.instances.push_back(make_instance({0.0}, 0));
    data.instances.push_back(make_instance({1.0}, 100));
    data.instances.push_back(make_instance({1.2}, 100));
    data.instances.push_back(make_instance({50.0}, 0));
    const KnnModel model = train_knn(data, 3);
    CHECK(predict_knn(model, std::vector<double>{0.9}) == 100);
  }
  SUBCASE("distance ties resolve by insertion order") {
    LabeledDataset data;
    data.instances.push_back(make_instance({1.0, 0.0}, 200));  // inserted first
    data.instances.push_back(make_instance({-1.0, 0.0}, 0));
    data.instances.push_back(make_instance({0.0, 30.0}, 100));
    const KnnModel model = train_knn(data, 1);
    CHECK(predict_knn(model, std::vector<double>{0.0, 0.0}) == 200);
  }
  SUBCASE("separable oracle corpus is perfectly classified") {
    std::mt19937 rng(24);
    const LabeledDataset train = three_clusters(rng, 50);
    const LabeledDataset test = three_clusters(rng, 20);
    const KnnModel model = train_knn(train, 1);
    for (const FeatureInstance& instance : test.instances) {
      CHECK(predict_knn(model, instance.coefficients) == *instance.payload_label);
    }
  }
  SUBCASE("k below 1 is rejected") {
    std::mt19937 rng(25);
    const LabeledDataset data = three_clusters(rng, 5);
    CHECK_THROWS_AS(train_knn(data, 0), ConfigError);
  }
}

TEST_CASE("baseline models round-trip through JSON") {
  std::mt19937 rng(26);
  const LabeledDataset train = three_clusters(rng, 30);
  test::TempDir dir("baselines");

  const GnbModel gnb = train_gnb(train);
  save_gnb(dir.file("gnb.json"), gnb);
  const GnbModel gnb_back = load_gnb(dir.file("gnb.json"));
  const KnnModel knn = train_knn(train, 1);
  save_knn(dir.file("knn.json"), knn);
  const KnnModel knn_back = load_knn(dir.file("knn.json"));

  std::uniform_real_distribution<double> dist(-2.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> x{dist(rng), dist(rng)};
    CHECK(predict_gnb(gnb_back, x) == predict_gnb(gnb, x));
    CHECK(predict_knn(knn_back, x) == predict_knn(knn, x));
  }
}

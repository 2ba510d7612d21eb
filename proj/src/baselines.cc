// src/baselines.cc

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

#include "dpa/baselines.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>

#include <json.hpp>

#include "dpa/error.h"

namespace dpa {

namespace {

constexpr double kVarianceFloor = 1e-9;

int label_of(const FeatureInstance& instance) {
  if (!instance.payload_label.has_value()) {
    throw ConfigError("baselines: every training instance needs a payload label");
  }
  return *instance.payload_label;
}

}  // namespace

GnbModel train_gnb(const LabeledDataset& data) {
  const std::size_t d = data.dim();
  GnbModel model;
  model.classes = data.classes();
  if (model.classes.empty()) throw ConfigError("train_gnb: empty dataset");

  std::map<int, std::size_t> index;
  for (std::size_t c = 0; c < model.classes.size(); ++c) index[model.classes[c]] = c;

  const std::size_t n_classes = model.classes.size();
  std::vector<double> count(n_classes, 0.0);
  model.mean.assign(n_classes, std::vector<double>(d, 0.0));
  model.var.assign(n_classes, std::vector<double>(d, 0.0));

  for (const FeatureInstance& instance : data.instances) {
    const std::size_t c = index[label_of(instance)];
    count[c] += 1.0;
    for (std::size_t i = 0; i < d; ++i) model.mean[c][i] += instance.coefficients[i];
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (double& m : model.mean[c]) m /= count[c];
  }
  for (const FeatureInstance& instance : data.instances) {
    const std::size_t c = index[label_of(instance)];
    for (std::size_t i = 0; i < d; ++i) {
      const double dev = instance.coefficients[i] - model.mean[c][i];
      model.var[c][i] += dev * dev;
    }
  }
  model.log_prior.resize(n_classes);
  const auto n = static_cast<double>(data.instances.size());
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (double& v : model.var[c]) v = std::max(v / count[c], kVarianceFloor);
    model.log_prior[c] = std::log(count[c] / n);
  }
  return model;
}

int predict_gnb(const GnbModel& model, std::span<const double> x) {
  if (model.classes.empty()) throw ConfigError("predict_gnb: empty model");
  if (x.size() != model.mean.front().size()) throw ConfigError("predict_gnb: dimension mismatch");
  int best = model.classes.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    double score = model.log_prior[c];
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double dev = x[i] - model.mean[c][i];
      score += -0.5 * std::log(2.0 * std::numbers::pi * model.var[c][i]) -
               0.5 * dev * dev / model.var[c][i];
    }
    if (score > best_score) {  // strict keeps the lower label on ties
      best_score = score;
      best = model.classes[c];
    }
  }
  return best;
}

KnnModel train_knn(const LabeledDataset& data, int k) {
  if (k < 1) throw ConfigError("train_knn: k must be at least 1");
  if (data.instances.empty()) throw ConfigError("train_knn: empty dataset");
  KnnModel model;
  model.k = k;
  model.dim = data.dim();
  model.standardization = fit_standardization(data);
  model.points.reserve(data.instances.size() * model.dim);
  model.labels.reserve(data.instances.size());
  for (const FeatureInstance& instance : data.instances) {
    const std::vector<double> z = model.standardization.apply(instance.coefficients);
    model.points.insert(model.points.end(), z.begin(), z.end());
    model.labels.push_back(label_of(instance));
  }
  return model;
}

int predict_knn(const KnnModel& model, std::span<const double> x) {
  if (model.labels.empty()) throw ConfigError("predict_knn: empty model");
  if (x.size() != model.dim) throw ConfigError("predict_knn: dimension mismatch");
  const std::vector<double> z = model.standardization.apply(x);

  const std::size_t n = model.labels.size();
  std::vector<std::pair<double, std::size_t>> ranked(n);  // (distance^2, insertion order)
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const double* p = model.points.data() + i * model.dim;
    for (std::size_t j = 0; j < model.dim; ++j) {
      const double dev = z[j] - p[j];
      acc += dev * dev;
    }
    ranked[i] = {acc, i};
  }
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(model.k), n);
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end());

  std::map<int, int> votes;
  std::map<int, std::size_t> best_rank;
  for (std::size_t r = 0; r < k; ++r) {
    const int label = model.labels[ranked[r].second];
    votes[label] += 1;
    if (!best_rank.contains(label)) best_rank[label] = r;
  }
  int best = model.labels[ranked[0].second];
  for (const auto& [label, n_votes] : votes) {
    if (n_votes > votes[best] || (n_votes == votes[best] && best_rank[label] < best_rank[best])) {
      best = label;
    }
  }
  return best;
}

namespace {

using nlohmann::json;

void write_json_atomic(const std::string& path, const json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    if (!file) throw DataError("cannot write model: " + tmp);
    file << j.dump(2) << "\n";
    if (!file) throw DataError("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

json read_json(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open model: " + path);
  try {
    return json::parse(file);
  } catch (const json::exception& e) {
    throw DataError("bad JSON in " + path + ": " + e.what());
  }
}

}  // namespace

void save_gnb(const std::string& path, const GnbModel& model) {
  json j;
  j["format"] = "dpa-gnb-model";
  j["version"] = 1;
  j["classes"] = model.classes;
  j["log_prior"] = model.log_prior;
  j["mean"] = model.mean;
  j["var"] = model.var;
  write_json_atomic(path, j);
}

GnbModel load_gnb(const std::string& path) {
  const json j = read_json(path);
  if (j.value("format", "") != "dpa-gnb-model" || j.value("version", 0) != 1) {
    throw DataError("not a gnb model: " + path);
  }
  GnbModel model;
  model.classes = j.at("classes").get<std::vector<int>>();
  model.log_prior = j.at("log_prior").get<std::vector<double>>();
  model.mean = j.at("mean").get<std::vector<std::vector<double>>>();
  model.var = j.at("var").get<std::vector<std::vector<double>>>();
  return model;
}

void save_knn(const std::string& path, const KnnModel& model) {
  json j;
  j["format"] = "dpa-knn-model";
  j["version"] = 1;
  j["k"] = model.k;
  j["dim"] = model.dim;
  j["standardization"] = {{"mean", model.standardization.mean},
                          {"scale", model.standardization.scale}};
  j["points"] = model.points;
  j["labels"] = model.labels;
  write_json_atomic(path, j);
}

KnnModel load_knn(const std::string& path) {
  const json j = read_json(path);
  if (j.value("format", "") != "dpa-knn-model" || j.value("version", 0) != 1) {
    throw DataError("not a knn model: " + path);
  }
  KnnModel model;
  model.k = j.at("k").get<int>();
  model.dim = j.at("dim").get<std::size_t>();
  model.standardization.mean = j.at("standardization").at("mean").get<std::vector<double>>();
  model.standardization.scale = j.at("standardization").at("scale").get<std::vector<double>>();
  model.points = j.at("points").get<std::vector<double>>();
  model.labels = j.at("labels").get<std::vector<int>>();
  return model;
}

}  // namespace dpa

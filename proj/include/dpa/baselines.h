// dpa/baselines.h

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

#ifndef DPA_BASELINES_H_
#define DPA_BASELINES_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dpa/svm.h"

namespace dpa {

// Gaussian naive Bayes: per-class per-feature normal fit with a variance
// floor of 1e-9; prediction by maximum log-posterior with priors taken from
// class frequencies. Label ties resolve to the lower label.
struct GnbModel {
  std::vector<int> classes;
  std::vector<double> log_prior;        // per class
  std::vector<std::vector<double>> mean;  // class x feature
  std::vector<std::vector<double>> var;
};

GnbModel train_gnb(const LabeledDataset& data);
int predict_gnb(const GnbModel& model, std::span<const double> x);

// Fine k-nearest-neighbors (k = 1 by default): Euclidean distance in the
// z-scored feature space, distance ties broken by insertion order, vote ties
// by the earliest-ranked neighbor among the tied labels.
struct KnnModel {
  int k = 1;
  Standardization standardization;
  std::vector<double> points;  // row-major, standardized
  std::size_t dim = 0;
  std::vector<int> labels;
};

KnnModel train_knn(const LabeledDataset& data, int k = 1);
int predict_knn(const KnnModel& model, std::span<const double> x);

void save_gnb(const std::string& path, const GnbModel& model);
GnbModel load_gnb(const std::string& path);
void save_knn(const std::string& path, const KnnModel& model);
KnnModel load_knn(const std::string& path);

}  // namespace dpa

#endif  // DPA_BASELINES_H_

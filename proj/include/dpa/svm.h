// dpa/svm.h

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

#ifndef DPA_SVM_H_
#define DPA_SVM_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpa/mfcc.h"

namespace dpa {

// Polynomial kernel degree: 1 = linear, 2 = quadratic, 3 = cubic.
struct KernelSpec {
  int degree = 3;
};

// K(x1, x2) = (x1 . x2 + 1)^p.
double poly_kernel(std::span<const double> x1, std::span<const double> x2, int degree);

struct SvmTrainOptions {
  double c = 1.0;
  double tol = 1e-3;
  long max_updates = 1'000'000;  // cap on two-multiplier steps
};

// Labeled feature vectors; every instance must carry a payload label and all
// instances share one dimensionality.
struct LabeledDataset {
  std::vector<FeatureInstance> instances;

  std::vector<int> classes() const;  // distinct labels, ascending
  std::size_t dim() const;
};

// One trained maximum-margin separator for a pair of classes. The decision
// value f(x) = sum_i dual_coeffs[i] * K(sv_i, x) + bias votes for
// class_pair.first when positive and class_pair.second otherwise.
struct BinarySvm {
  std::vector<double> sv_data;  // row-major support vectors
  std::size_t dim = 0;
  std::vector<double> dual_coeffs;  // alpha_i * y_i per support vector
  std::vector<std::size_t> support_indices;  // positions in the training set
  double bias = 0.0;
  KernelSpec kernel;
  std::pair<int, int> class_pair{0, 0};

  std::size_t n_support() const { return dual_coeffs.size(); }
  std::span<const double> support_vector(std::size_t i) const {
    return {sv_data.data() + i * dim, dim};
  }
};

// Optimizer bookkeeping for audits: the dual objective sampled once per
// sweep of n updates (non-decreasing when the solver is healthy).
struct SvmTrainDiagnostics {
  std::vector<double> objective_trace;
  long updates = 0;
  double final_gap = 0.0;
};

// Solves the two-class dual by sequential two-multiplier optimization with
// maximal-violating-pair selection, stopping when the KKT gap drops to tol.
// The lower label of the pair is mapped to +1. Features are expected to be
// standardized already.
BinarySvm train_binary(const LabeledDataset& data, KernelSpec kernel,
                       const SvmTrainOptions& options = {},
                       SvmTrainDiagnostics* diagnostics = nullptr);

double decision_value(const BinarySvm& model, std::span<const double> x);

// Worst-case KKT residual of a trained binary over its training set:
// alpha = 0 wants y f >= 1, free alphas want y f == 1, alpha = C wants
// y f <= 1. `data` must be the set the model was trained on.
double kkt_violation(const BinarySvm& model, const LabeledDataset& data, double c);

// Per-feature z-score statistics captured at training time.
struct Standardization {
  std::vector<double> mean;
  std::vector<double> scale;

  std::vector<double> apply(std::span<const double> x) const;
};

Standardization fit_standardization(const LabeledDataset& data);

// One-vs-one multiclass model: N(N-1)/2 binaries plus the training-time
// standardization, reapplied at prediction.
struct OvoSvmModel {
  std::vector<BinarySvm> binaries;
  std::vector<int> classes;
  Standardization standardization;
  double c = 1.0;
};

OvoSvmModel train_ovo(const LabeledDataset& data, KernelSpec kernel,
                      const SvmTrainOptions& options = {});

// Majority vote over all binaries; ties broken by the larger sum of
// |decision value| over won comparisons, then by the lower label.
int predict(const OvoSvmModel& model, std::span<const double> x);

// Versioned JSON round-trip; reloading reproduces predictions bit-for-bit.
void save_model(const std::string& path, const OvoSvmModel& model);
OvoSvmModel load_model(const std::string& path);
std::string model_to_json(const OvoSvmModel& model);
OvoSvmModel model_from_json(const std::string& text);

}  // namespace dpa

#endif  // DPA_SVM_H_

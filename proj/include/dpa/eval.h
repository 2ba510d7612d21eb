// dpa/eval.h

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

#ifndef DPA_EVAL_H_
#define DPA_EVAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpa/audio.h"
#include "dpa/baselines.h"
#include "dpa/mfcc.h"
#include "dpa/noise.h"
#include "dpa/pitch.h"
#include "dpa/svm.h"

namespace dpa {

enum class ClassifierKind { kSvm, kGnb, kKnn };

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::kSvm;
  KernelSpec kernel{3};
  double c = 1.0;
  double tol = 1e-3;
  int knn_k = 1;

  std::string name() const;
};

// Rows are true classes, columns predicted.
struct ConfusionMatrix {
  std::vector<int> classes;
  std::vector<std::vector<std::int64_t>> counts;

  std::int64_t total() const;
  void add(int true_label, int predicted_label);
};

// trace / total, the standard multiclass reduction of (TP+TN)/(TP+FP+TN+FN).
double accuracy(const ConfusionMatrix& cm);
std::vector<double> per_class_recall(const ConfusionMatrix& cm);

struct EvaluationReport {
  std::string experiment_id;
  double window_s = 0.0;
  ClassifierSpec classifier;
  std::optional<double> snr_db;
  double train_frac = 0.7;
  ConfusionMatrix confusion;
  double accuracy_value = 0.0;
  std::vector<double> recall;
  double wall_seconds = 0.0;  // reported separately from artifacts; see run.json
};

// Chronological split: per recording, the first ceil(train_frac * n)
// instances train and the rest test. No shuffling; windows stay in recording
// order. A recording with fewer than 2 instances is an error.
std::pair<LabeledDataset, LabeledDataset> chrono_split(
    const std::vector<std::vector<FeatureInstance>>& per_recording, double train_frac = 0.7);

// Multiclass model behind one calling convention, so experiment code and the
// CLI do not care which algorithm is inside.
struct TrainedClassifier {
  ClassifierKind kind = ClassifierKind::kSvm;
  OvoSvmModel svm;
  GnbModel gnb;
  KnnModel knn;

  int predict(std::span<const double> x) const;
};

TrainedClassifier train_classifier(const LabeledDataset& data, const ClassifierSpec& spec);
ConfusionMatrix evaluate_on(const TrainedClassifier& model, const LabeledDataset& test,
                            const std::vector<int>& classes);

// Labeled recordings, one entry per (weight, take).
using Corpus = std::vector<AudioClip>;

// One test-set prediction, for the predictions artifact.
struct Prediction {
  std::string source_id;
  std::optional<int> weight_g;
  double window_s = 0.0;
  int predicted_g = 0;
};

// Features at window_s, 70/30 chronological split, train, test, report.
// When `predictions` is given it receives one row per test instance.
EvaluationReport run_weight_classification(const Corpus& corpus, double window_s,
                                           const ClassifierSpec& spec,
                                           const MfccParams& params = {},
                                           double train_frac = 0.7,
                                           std::vector<Prediction>* predictions = nullptr);

// Same experiment over already-extracted per-recording features, so several
// classifiers can share one extraction pass.
EvaluationReport run_weight_classification_features(
    const std::vector<std::vector<FeatureInstance>>& per_recording, double window_s,
    const ClassifierSpec& spec, double train_frac = 0.7,
    std::vector<Prediction>* predictions = nullptr);

struct ErrorRatePoint {
  int weight_g = 0;
  double window_s = 0.0;
  double error_rate = 0.0;
};

std::vector<double> default_study_windows();  // 0.25 s .. 2.5 s in 0.25 s steps

struct WindowStudyResult {
  std::vector<PitchEstimate> estimates;  // every per-segment pitch, all windows
  std::vector<ErrorRatePoint> curve;
};

// Pitch presence study: per weight and window length, the fraction of that
// weight's pitch samples falling inside the 0 g mean +/- 3 sigma interval.
WindowStudyResult run_window_study_detailed(const Corpus& corpus,
                                            const std::vector<double>& windows =
                                                default_study_windows(),
                                            const PitchBand& band = {},
                                            double sigma_mult = 3.0);
std::vector<ErrorRatePoint> run_window_study(const Corpus& corpus,
                                             const std::vector<double>& windows =
                                                 default_study_windows(),
                                             const PitchBand& band = {},
                                             double sigma_mult = 3.0);

struct SnrPoint {
  double snr_db = 0.0;
  double window_s = 0.0;
  double accuracy = 0.0;
};

// Trains on clean features, then re-runs the test portion with AWGN injected
// at every grid level. Noise seeds split per (recording, level).
std::vector<SnrPoint> run_snr_study(const Corpus& corpus, double window_s,
                                    const ClassifierSpec& spec, const SnrGrid& grid,
                                    std::uint64_t seed, const MfccParams& params = {},
                                    double train_frac = 0.7);

}  // namespace dpa

#endif  // DPA_EVAL_H_

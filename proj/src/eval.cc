// src/eval.cc

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

#include "dpa/eval.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "dpa/error.h"
#include "dpa/rng.h"

namespace dpa {

namespace {

int label_of(const FeatureInstance& instance) {
  if (!instance.payload_label.has_value()) {
    throw ConfigError("eval: feature instance without a payload label");
  }
  return *instance.payload_label;
}

int label_of(const AudioClip& clip) {
  if (!clip.payload_label.has_value()) {
    throw ConfigError("eval: corpus clip without a payload label");
  }
  return *clip.payload_label;
}

std::vector<int> corpus_classes(const Corpus& corpus) {
  std::set<int> classes;
  for (const AudioClip& clip : corpus) classes.insert(label_of(clip));
  return {classes.begin(), classes.end()};
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string ClassifierSpec::name() const {
  switch (kind) {
    case ClassifierKind::kGnb:
      return "gnb";
    case ClassifierKind::kKnn:
      return "fine-knn";
    case ClassifierKind::kSvm:
      break;
  }
  switch (kernel.degree) {
    case 1:
      return "linear-svm";
    case 2:
      return "quadratic-svm";
    case 3:
      return "cubic-svm";
    default:
      return "svm-p" + std::to_string(kernel.degree);
  }
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t acc = 0;
  for (const auto& row : counts) {
    for (std::int64_t v : row) acc += v;
  }
  return acc;
}

void ConfusionMatrix::add(int true_label, int predicted_label) {
  const auto t = std::find(classes.begin(), classes.end(), true_label);
  const auto p = std::find(classes.begin(), classes.end(), predicted_label);
  if (t == classes.end() || p == classes.end()) {
    throw ConfigError("confusion matrix: label outside the class list");
  }
  counts[static_cast<std::size_t>(t - classes.begin())]
        [static_cast<std::size_t>(p - classes.begin())] += 1;
}

double accuracy(const ConfusionMatrix& cm) {
  const std::int64_t n = cm.total();
  if (n == 0) throw DataError("accuracy: empty confusion matrix");
  std::int64_t diag = 0;
  for (std::size_t i = 0; i < cm.classes.size(); ++i) diag += cm.counts[i][i];
  return static_cast<double>(diag) / static_cast<double>(n);
}

std::vector<double> per_class_recall(const ConfusionMatrix& cm) {
  std::vector<double> recall(cm.classes.size(), 0.0);
  for (std::size_t i = 0; i < cm.classes.size(); ++i) {
    std::int64_t row = 0;
    for (std::int64_t v : cm.counts[i]) row += v;
    recall[i] = row == 0 ? 0.0 : static_cast<double>(cm.counts[i][i]) / static_cast<double>(row);
  }
  return recall;
}

std::pair<LabeledDataset, LabeledDataset> chrono_split(
    const std::vector<std::vector<FeatureInstance>>& per_recording, double train_frac) {
  if (train_frac <= 0.0 || train_frac >= 1.0) {
    throw ConfigError("chrono_split: train fraction must lie in (0, 1)");
  }
  LabeledDataset train, test;
  for (const std::vector<FeatureInstance>& recording : per_recording) {
    if (recording.size() < 2) {
      throw DataError("chrono_split: a recording yields fewer than 2 instances");
    }
    const auto n = static_cast<double>(recording.size());
    const auto n_train = static_cast<std::size_t>(std::ceil(train_frac * n));
    for (std::size_t i = 0; i < recording.size(); ++i) {
      (i < n_train ? train : test).instances.push_back(recording[i]);
    }
  }
  return {std::move(train), std::move(test)};
}

int TrainedClassifier::predict(std::span<const double> x) const {
  switch (kind) {
    case ClassifierKind::kSvm:
      return dpa::predict(svm, x);
    case ClassifierKind::kGnb:
      return predict_gnb(gnb, x);
    case ClassifierKind::kKnn:
      return predict_knn(knn, x);
  }
  throw ConfigError("predict: unknown classifier kind");
}

TrainedClassifier train_classifier(const LabeledDataset& data, const ClassifierSpec& spec) {
  TrainedClassifier model;
  model.kind = spec.kind;
  switch (spec.kind) {
    case ClassifierKind::kSvm: {
      SvmTrainOptions options;
      options.c = spec.c;
      options.tol = spec.tol;
      model.svm = train_ovo(data, spec.kernel, options);
      break;
    }
    case ClassifierKind::kGnb:
      model.gnb = train_gnb(data);
      break;
    case ClassifierKind::kKnn:
      model.knn = train_knn(data, spec.knn_k);
      break;
  }
  return model;
}

ConfusionMatrix evaluate_on(const TrainedClassifier& model, const LabeledDataset& test,
                            const std::vector<int>& classes) {
  ConfusionMatrix cm;
  cm.classes = classes;
  cm.counts.assign(classes.size(), std::vector<std::int64_t>(classes.size(), 0));
  for (const FeatureInstance& instance : test.instances) {
    cm.add(label_of(instance), model.predict(instance.coefficients));
  }
  return cm;
}

EvaluationReport run_weight_classification_features(
    const std::vector<std::vector<FeatureInstance>>& per_recording, double window_s,
    const ClassifierSpec& spec, double train_frac, std::vector<Prediction>* predictions) {
  const auto start = std::chrono::steady_clock::now();
  std::set<int> class_set;
  for (const std::vector<FeatureInstance>& recording : per_recording) {
    for (const FeatureInstance& instance : recording) class_set.insert(label_of(instance));
  }
  const std::vector<int> classes(class_set.begin(), class_set.end());
  if (classes.size() < 2) {
    throw ConfigError("run_weight_classification: need at least two classes");
  }

  auto [train, test] = chrono_split(per_recording, train_frac);
  const TrainedClassifier model = train_classifier(train, spec);

  EvaluationReport report;
  report.experiment_id = "weight-classification";
  report.window_s = window_s;
  report.classifier = spec;
  report.train_frac = train_frac;
  report.confusion.classes = classes;
  report.confusion.counts.assign(classes.size(), std::vector<std::int64_t>(classes.size(), 0));
  for (const FeatureInstance& instance : test.instances) {
    const int predicted = model.predict(instance.coefficients);
    report.confusion.add(label_of(instance), predicted);
    if (predictions != nullptr) {
      predictions->push_back(
          {instance.source_id, instance.payload_label, instance.window_s, predicted});
    }
  }
  report.accuracy_value = accuracy(report.confusion);
  report.recall = per_class_recall(report.confusion);
  report.wall_seconds = elapsed_s(start);
  return report;
}

EvaluationReport run_weight_classification(const Corpus& corpus, double window_s,
                                           const ClassifierSpec& spec, const MfccParams& params,
                                           double train_frac,
                                           std::vector<Prediction>* predictions) {
  const auto start = std::chrono::steady_clock::now();
  if (corpus_classes(corpus).size() < 2) {
    throw ConfigError("run_weight_classification: need at least two classes");
  }
  std::vector<std::vector<FeatureInstance>> per_recording;
  per_recording.reserve(corpus.size());
  for (const AudioClip& clip : corpus) {
    per_recording.push_back(extract_instances(clip, window_s, params));
  }
  EvaluationReport report =
      run_weight_classification_features(per_recording, window_s, spec, train_frac, predictions);
  report.wall_seconds = elapsed_s(start);
  return report;
}

std::vector<double> default_study_windows() {
  std::vector<double> windows;
  for (int i = 1; i <= 10; ++i) windows.push_back(0.25 * i);
  return windows;
}

WindowStudyResult run_window_study_detailed(const Corpus& corpus,
                                            const std::vector<double>& windows,
                                            const PitchBand& band, double sigma_mult) {
  std::map<int, std::vector<AudioClip>> by_weight;
  for (const AudioClip& clip : corpus) by_weight[label_of(clip)].push_back(clip);
  if (!by_weight.contains(0)) {
    throw DataError("run_window_study: corpus is missing the 0 g reference class");
  }

  WindowStudyResult result;
  for (double window_s : windows) {
    std::map<int, PitchDistribution> dist_of;
    for (const auto& [weight, clips] : by_weight) {
      PitchDistribution dist;
      dist.payload_class = weight;
      dist.window_s = window_s;
      for (const AudioClip& clip : clips) {
        for (PitchEstimate& estimate : estimate_pitch_segments(clip, window_s, band)) {
          dist.samples_hz.push_back(estimate.frequency_hz);
          result.estimates.push_back(std::move(estimate));
        }
      }
      if (dist.samples_hz.empty()) {
        throw DataError("run_window_study: no usable segments at window " +
                        std::to_string(window_s));
      }
      dist_of[weight] = std::move(dist);
    }
    const PitchDistribution& dist_0 = dist_of.at(0);
    for (const auto& [weight, dist_w] : dist_of) {
      result.curve.push_back({weight, window_s, presence_error_rate(dist_w, dist_0, sigma_mult)});
    }
  }
  // Stable order for artifacts: weight-major, window-minor.
  std::stable_sort(result.curve.begin(), result.curve.end(), [](const auto& a, const auto& b) {
    return a.weight_g != b.weight_g ? a.weight_g < b.weight_g : a.window_s < b.window_s;
  });
  return result;
}

std::vector<ErrorRatePoint> run_window_study(const Corpus& corpus,
                                             const std::vector<double>& windows,
                                             const PitchBand& band, double sigma_mult) {
  return run_window_study_detailed(corpus, windows, band, sigma_mult).curve;
}

std::vector<SnrPoint> run_snr_study(const Corpus& corpus, double window_s,
                                    const ClassifierSpec& spec, const SnrGrid& grid,
                                    std::uint64_t seed, const MfccParams& params,
                                    double train_frac) {
  const std::vector<int> classes = corpus_classes(corpus);
  if (classes.size() < 2) throw ConfigError("run_snr_study: need at least two classes");

  // Chronological cut at the raw-sample level so the test portion can be
  // perturbed before feature extraction.
  std::vector<std::vector<FeatureInstance>> train_parts;
  std::vector<AudioClip> test_parts;
  for (const AudioClip& clip : corpus) {
    const auto window_len =
        static_cast<std::size_t>(std::llround(window_s * clip.sample_rate_hz));
    const std::size_t n_windows = clip.samples.size() / window_len;
    if (n_windows < 2) throw DataError("run_snr_study: a recording yields fewer than 2 windows");
    const auto n_train =
        static_cast<std::size_t>(std::ceil(train_frac * static_cast<double>(n_windows)));
    if (n_train >= n_windows) {
      throw DataError("run_snr_study: no test windows left after the chronological split");
    }

    AudioClip train_clip = clip;
    train_clip.samples.assign(clip.samples.begin(),
                              clip.samples.begin() + static_cast<std::ptrdiff_t>(n_train * window_len));
    train_parts.push_back(extract_instances(train_clip, window_s, params));

    AudioClip test_clip = clip;
    test_clip.samples.assign(clip.samples.begin() + static_cast<std::ptrdiff_t>(n_train * window_len),
                             clip.samples.begin() + static_cast<std::ptrdiff_t>(n_windows * window_len));
    test_parts.push_back(std::move(test_clip));
  }

  LabeledDataset train;
  for (std::vector<FeatureInstance>& part : train_parts) {
    train.instances.insert(train.instances.end(), part.begin(), part.end());
  }
  const TrainedClassifier model = train_classifier(train, spec);

  std::vector<SnrPoint> curve;
  curve.reserve(grid.levels_db.size());
  for (std::size_t level = 0; level < grid.levels_db.size(); ++level) {
    const double snr_db = grid.levels_db[level];
    LabeledDataset test;
    for (std::size_t c = 0; c < test_parts.size(); ++c) {
      const AudioClip noisy =
          add_awgn(test_parts[c], snr_db, mix_seed(mix_seed(seed, c), level));
      auto instances = extract_instances(noisy, window_s, params);
      test.instances.insert(test.instances.end(), instances.begin(), instances.end());
    }
    const ConfusionMatrix cm = evaluate_on(model, test, classes);
    curve.push_back({snr_db, window_s, accuracy(cm)});
  }
  return curve;
}

}  // namespace dpa

// tools/dpa_main.cc

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

// Single binary driving the full pipeline: synthetic corpus generation,
// feature extraction, the pitch presence study, training, classification,
// the evaluation run and the SNR sweep. Every subcommand echoes its resolved
// configuration into run.json; all other artifacts are byte-reproducible for
// a fixed seed.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpa/baselines.h"
#include "dpa/error.h"
#include "dpa/eval.h"
#include "dpa/manifest.h"
#include "dpa/mfcc.h"
#include "dpa/noise.h"
#include "dpa/pitch.h"
#include "dpa/reports.h"
#include "dpa/rng.h"
#include "dpa/svm.h"
#include "dpa/synth.h"
#include "dpa/wav.h"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitConvergence = 4;

struct CommonOptions {
  std::string manifest;
  std::string out_dir;
  double window_s = 1.0;
  int kernel_degree = 3;
  double c = 1.0;
  std::uint64_t seed = 1;
  std::string classifier = "svm";
  double snr_lo = 0.0;
  double snr_hi = 8.8;
  int snr_count = 183;
};

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_run_json(const std::string& out_dir, const std::string& subcommand,
                    const json& config, const std::vector<std::string>& artifacts,
                    double wall_seconds) {
  json j;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["artifacts"] = artifacts;
  j["timestamp_utc"] = timestamp_utc();
  j["wall_seconds"] = wall_seconds;
  dpa::write_text_atomic((std::filesystem::path(out_dir) / "run.json").string(),
                         j.dump(2) + "\n");
}

std::string out_path(const std::string& out_dir, const std::string& name) {
  return (std::filesystem::path(out_dir) / name).string();
}

void ensure_out_dir(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
}

dpa::ClassifierSpec make_spec(const CommonOptions& options) {
  dpa::ClassifierSpec spec;
  if (options.classifier == "svm") {
    spec.kind = dpa::ClassifierKind::kSvm;
  } else if (options.classifier == "gnb") {
    spec.kind = dpa::ClassifierKind::kGnb;
  } else if (options.classifier == "knn") {
    spec.kind = dpa::ClassifierKind::kKnn;
  } else {
    throw dpa::ConfigError("unknown classifier: " + options.classifier);
  }
  spec.kernel.degree = options.kernel_degree;
  spec.c = options.c;
  return spec;
}

// Loads every manifest entry, labels it, and trims it to the listed duration.
dpa::Corpus load_corpus(const std::string& manifest_path) {
  const dpa::DatasetManifest manifest = dpa::read_manifest(manifest_path);
  if (manifest.entries.empty()) throw dpa::DataError("manifest lists no recordings");
  dpa::Corpus corpus;
  for (const dpa::ManifestEntry& entry : manifest.entries) {
    dpa::AudioClip clip = dpa::load_wav(dpa::resolve_entry_path(manifest_path, entry.path));
    clip.payload_label = entry.weight_g;
    clip.source_id = entry.path;
    if (entry.duration_s > 0.0) {
      const auto keep = static_cast<std::size_t>(entry.duration_s * clip.sample_rate_hz);
      if (keep < clip.samples.size()) clip.samples.resize(keep);
    }
    corpus.push_back(std::move(clip));
  }
  return corpus;
}

int run_synth(const CommonOptions& options, double duration_s, int sample_rate_hz) {
  const auto start = std::chrono::steady_clock::now();
  ensure_out_dir(options.out_dir);
  dpa::DatasetManifest manifest;
  std::vector<std::string> artifacts;
  for (int weight : dpa::default_weights()) {
    dpa::SynthProfile profile = dpa::default_profile(weight);
    profile.duration_s = duration_s;
    profile.seed = dpa::mix_seed(options.seed, static_cast<std::uint64_t>(weight));
    const dpa::AudioClip clip = dpa::synthesize(profile, sample_rate_hz);
    char name[32];
    std::snprintf(name, sizeof name, "drone_%03dg.wav", weight);
    dpa::write_wav(out_path(options.out_dir, name), clip);
    manifest.entries.push_back({name, weight, clip.duration_s()});
    artifacts.emplace_back(name);
  }
  dpa::write_manifest(out_path(options.out_dir, "manifest.csv"), manifest);
  artifacts.emplace_back("manifest.csv");

  json config;
  config["out"] = options.out_dir;
  config["duration_s"] = duration_s;
  config["sample_rate_hz"] = sample_rate_hz;
  config["seed"] = options.seed;
  write_run_json(options.out_dir, "synth", config, artifacts,
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  std::cout << "wrote " << manifest.entries.size() << " recordings to " << options.out_dir
            << "\n";
  return 0;
}

int run_features(const CommonOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ensure_out_dir(options.out_dir);
  const dpa::Corpus corpus = load_corpus(options.manifest);
  const dpa::MfccParams params;
  std::vector<dpa::FeatureInstance> instances;
  for (const dpa::AudioClip& clip : corpus) {
    auto windows = dpa::extract_instances(clip, options.window_s, params);
    instances.insert(instances.end(), windows.begin(), windows.end());
  }
  if (instances.empty()) {
    throw dpa::DataError("no analysis windows fit the recordings at this window length");
  }
  dpa::write_features_csv(out_path(options.out_dir, "features.csv"), instances);

  json config;
  config["manifest"] = options.manifest;
  config["out"] = options.out_dir;
  config["window_s"] = options.window_s;
  config["seed"] = options.seed;
  write_run_json(options.out_dir, "features", config, {"features.csv"},
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  std::cout << "wrote " << instances.size() << " feature instances\n";
  return 0;
}

int run_pitch(const CommonOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ensure_out_dir(options.out_dir);
  const dpa::Corpus corpus = load_corpus(options.manifest);
  const dpa::WindowStudyResult study = dpa::run_window_study_detailed(corpus);
  dpa::write_pitch_csv(out_path(options.out_dir, "pitch.csv"), study.estimates);
  dpa::write_error_curve_csv(out_path(options.out_dir, "error_rate.csv"), study.curve);

  json config;
  config["manifest"] = options.manifest;
  config["out"] = options.out_dir;
  config["windows_s"] = dpa::default_study_windows();
  config["seed"] = options.seed;
  write_run_json(options.out_dir, "pitch", config, {"pitch.csv", "error_rate.csv"},
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  std::cout << "wrote " << study.estimates.size() << " pitch samples and "
            << study.curve.size() << " curve points\n";
  return 0;
}

int run_train(const CommonOptions& options, const std::string& features_path) {
  const auto start = std::chrono::steady_clock::now();
  ensure_out_dir(options.out_dir);
  dpa::LabeledDataset data;
  data.instances = dpa::read_features_csv(features_path);
  const dpa::ClassifierSpec spec = make_spec(options);
  const dpa::TrainedClassifier model = dpa::train_classifier(data, spec);
  const std::string model_path = out_path(options.out_dir, "model.json");
  switch (spec.kind) {
    case dpa::ClassifierKind::kSvm:
      dpa::save_model(model_path, model.svm);
      break;
    case dpa::ClassifierKind::kGnb:
      dpa::save_gnb(model_path, model.gnb);
      break;
    case dpa::ClassifierKind::kKnn:
      dpa::save_knn(model_path, model.knn);
      break;
  }

  json config;
  config["features"] = features_path;
  config["out"] = options.out_dir;
  config["classifier"] = options.classifier;
  config["kernel"] = options.kernel_degree;
  config["c"] = options.c;
  config["seed"] = options.seed;
  write_run_json(options.out_dir, "train", config, {"model.json"},
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  std::cout << "wrote " << model_path << "\n";
  return 0;
}

int run_classify(const CommonOptions& options, const std::string& model_path,
                 const std::string& features_path) {
  const auto start = std::chrono::steady_clock::now();
  ensure_out_dir(options.out_dir);
  const std::vector<dpa::FeatureInstance> instances = dpa::read_features_csv(features_path);

  std::ifstream model_file(model_path);
  if (!model_file) throw dpa::DataError("cannot open model: " + model_path);
  json header;
  try {
    header = json::parse(model_file);
  } catch (const json::exception& e) {
    throw dpa::DataError("bad JSON in " + model_path + ": " + e.what());
  }
  const std::string format = header.value("format", "");

  dpa::TrainedClassifier model;
  if (format == "dpa-svm-model") {
    model.kind = dpa::ClassifierKind::kSvm;
    model.svm = dpa::load_model(model_path);
  } else if (format == "dpa-gnb-model") {
    model.kind = dpa::ClassifierKind::kGnb;
    model.gnb = dpa::load_gnb(model_path);
  } else if (format == "dpa-knn-model") {
    model.kind = dpa::ClassifierKind::kKnn;
    model.knn = dpa::load_knn(model_path);
  } else {
    throw dpa::DataError("unrecognized model format in " + model_path);
  }

  std::vector<dpa::Prediction> predictions;
  predictions.reserve(instances.size());
  for (const dpa::FeatureInstance& instance : instances) {
    predictions.push_back({instance.source_id, instance.payload_label, instance.window_s,
                           model.predict(instance.coefficients)});
  }
  dpa::write_predictions_csv(out_path(options.out_dir, "predictions.csv"), predictions);

  json config;
  config["model"] = model_path;
  config["features"] = features_path;
  config["out"] = options.out_dir;
  config["seed"] = options.seed;
  write_run_json(options.out_dir, "classify", config, {"predictions.csv"},
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  std::cout << "wrote " << predictions.size() << " predictions\n";
  return 0;
}

int run_evaluate(const CommonOptions& options, bool all_classifiers) {
  const auto start = std::chrono::steady_clock::now();
  ensure_out_dir(options.out_dir);
  const dpa::Corpus corpus = load_corpus(options.manifest);
  const dpa::ClassifierSpec spec = make_spec(options);

  std::vector<std::vector<dpa::FeatureInstance>> per_recording;
  per_recording.reserve(corpus.size());
  for (const dpa::AudioClip& clip : corpus) {
    per_recording.push_back(dpa::extract_instances(clip, options.window_s, dpa::MfccParams{}));
  }

  std::vector<dpa::Prediction> predictions;
  const dpa::EvaluationReport report = dpa::run_weight_classification_features(
      per_recording, options.window_s, spec, 0.7, &predictions);
  dpa::write_report_json(out_path(options.out_dir, "report.json"), report);
  dpa::write_confusion_csv(out_path(options.out_dir, "confusion.csv"), report.confusion);
  dpa::write_predictions_csv(out_path(options.out_dir, "predictions.csv"), predictions);
  std::vector<std::string> artifacts{"report.json", "confusion.csv", "predictions.csv"};
  std::cout << report.classifier.name() << " @ " << options.window_s
            << " s: accuracy = " << report.accuracy_value << "\n";

  if (all_classifiers) {
    // The classifier comparison: every implemented algorithm over the same
    // extraction pass.
    std::vector<dpa::ClassifierSpec> lineup;
    for (int degree : {1, 2, 3}) {
      dpa::ClassifierSpec svm_spec = spec;
      svm_spec.kind = dpa::ClassifierKind::kSvm;
      svm_spec.kernel.degree = degree;
      lineup.push_back(svm_spec);
    }
    dpa::ClassifierSpec gnb_spec = spec;
    gnb_spec.kind = dpa::ClassifierKind::kGnb;
    lineup.push_back(gnb_spec);
    dpa::ClassifierSpec knn_spec = spec;
    knn_spec.kind = dpa::ClassifierKind::kKnn;
    lineup.push_back(knn_spec);

    std::ostringstream comparison;
    comparison << "classifier,window_s,accuracy\n";
    for (const dpa::ClassifierSpec& entry : lineup) {
      const dpa::EvaluationReport r =
          entry.name() == report.classifier.name()
              ? report
              : dpa::run_weight_classification_features(per_recording, options.window_s, entry);
      char acc[32];
      std::snprintf(acc, sizeof acc, "%.17g", r.accuracy_value);
      comparison << entry.name() << "," << options.window_s << "," << acc << "\n";
      std::cout << "  " << entry.name() << ": " << r.accuracy_value << "\n";
    }
    dpa::write_text_atomic(out_path(options.out_dir, "comparison.csv"), comparison.str());
    artifacts.emplace_back("comparison.csv");
  }

  json config;
  config["manifest"] = options.manifest;
  config["out"] = options.out_dir;
  config["window_s"] = options.window_s;
  config["classifier"] = options.classifier;
  config["kernel"] = options.kernel_degree;
  config["c"] = options.c;
  config["all_classifiers"] = all_classifiers;
  config["seed"] = options.seed;
  write_run_json(options.out_dir, "evaluate", config, artifacts,
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return 0;
}

int run_snr_sweep(const CommonOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ensure_out_dir(options.out_dir);
  const dpa::Corpus corpus = load_corpus(options.manifest);
  const dpa::ClassifierSpec spec = make_spec(options);
  const dpa::SnrGrid grid = dpa::snr_grid(options.snr_lo, options.snr_hi, options.snr_count);
  const std::vector<dpa::SnrPoint> curve =
      dpa::run_snr_study(corpus, options.window_s, spec, grid, options.seed);
  dpa::write_snr_curve_csv(out_path(options.out_dir, "snr_curve.csv"), curve);

  json config;
  config["manifest"] = options.manifest;
  config["out"] = options.out_dir;
  config["window_s"] = options.window_s;
  config["classifier"] = options.classifier;
  config["kernel"] = options.kernel_degree;
  config["c"] = options.c;
  config["snr_lo"] = options.snr_lo;
  config["snr_hi"] = options.snr_hi;
  config["snr_count"] = options.snr_count;
  config["seed"] = options.seed;
  write_run_json(options.out_dir, "snr-sweep", config, {"snr_curve.csv"},
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  std::cout << "wrote " << curve.size() << " SNR levels\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Payload weight estimation from drone acoustic emissions"};
  app.require_subcommand(1);

  CommonOptions options;
  double synth_duration_s = 170.0;
  int synth_rate_hz = 44100;
  std::string features_path;
  std::string model_path;
  bool all_classifiers = false;

  CLI::App* synth = app.add_subcommand("synth", "Generate the synthetic 11-class corpus");
  synth->add_option("--out", options.out_dir, "Output directory")->required();
  synth->add_option("--duration", synth_duration_s, "Seconds per recording")
      ->check(CLI::PositiveNumber);
  synth->add_option("--rate", synth_rate_hz, "Sample rate in Hz")->check(CLI::PositiveNumber);
  synth->add_option("--seed", options.seed, "Corpus seed");

  CLI::App* features = app.add_subcommand("features", "Extract MFCC features from a manifest");
  features->add_option("--manifest", options.manifest, "Dataset manifest CSV")->required();
  features->add_option("--out", options.out_dir, "Output directory")->required();
  features->add_option("--window", options.window_s, "Instance window in seconds")
      ->check(CLI::PositiveNumber);
  features->add_option("--seed", options.seed, "Seed (echoed into run.json)");

  CLI::App* pitch = app.add_subcommand("pitch", "Pitch study: per-window estimates and the "
                                                "payload-presence error-rate curve");
  pitch->add_option("--manifest", options.manifest, "Dataset manifest CSV")->required();
  pitch->add_option("--out", options.out_dir, "Output directory")->required();
  pitch->add_option("--seed", options.seed, "Seed (echoed into run.json)");

  CLI::App* train = app.add_subcommand("train", "Train a classifier from a features CSV");
  train->add_option("--features", features_path, "Features CSV")->required();
  train->add_option("--out", options.out_dir, "Output directory")->required();
  train->add_option("--classifier", options.classifier, "svm, gnb or knn")
      ->check(CLI::IsMember({"svm", "gnb", "knn"}));
  train->add_option("--kernel", options.kernel_degree, "Polynomial degree (1, 2 or 3)")
      ->check(CLI::Range(1, 10));
  train->add_option("--c", options.c, "SVM box constraint")->check(CLI::PositiveNumber);
  train->add_option("--seed", options.seed, "Seed (echoed into run.json)");

  CLI::App* classify = app.add_subcommand("classify", "Apply a saved model to a features CSV");
  classify->add_option("--model", model_path, "Model JSON")->required();
  classify->add_option("--features", features_path, "Features CSV")->required();
  classify->add_option("--out", options.out_dir, "Output directory")->required();
  classify->add_option("--seed", options.seed, "Seed (echoed into run.json)");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Train/test split, confusion matrix and "
                                                      "accuracy report");
  evaluate->add_option("--manifest", options.manifest, "Dataset manifest CSV")->required();
  evaluate->add_option("--out", options.out_dir, "Output directory")->required();
  evaluate->add_option("--window", options.window_s, "Instance window in seconds")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--classifier", options.classifier, "svm, gnb or knn")
      ->check(CLI::IsMember({"svm", "gnb", "knn"}));
  evaluate->add_option("--kernel", options.kernel_degree, "Polynomial degree (1, 2 or 3)")
      ->check(CLI::Range(1, 10));
  evaluate->add_option("--c", options.c, "SVM box constraint")->check(CLI::PositiveNumber);
  evaluate->add_flag("--all-classifiers", all_classifiers,
                     "Also emit the five-classifier comparison");
  evaluate->add_option("--seed", options.seed, "Seed (echoed into run.json)");

  CLI::App* snr = app.add_subcommand("snr-sweep", "Accuracy versus SNR under injected AWGN");
  snr->add_option("--manifest", options.manifest, "Dataset manifest CSV")->required();
  snr->add_option("--out", options.out_dir, "Output directory")->required();
  snr->add_option("--window", options.window_s, "Instance window in seconds")
      ->check(CLI::PositiveNumber);
  snr->add_option("--classifier", options.classifier, "svm, gnb or knn")
      ->check(CLI::IsMember({"svm", "gnb", "knn"}));
  snr->add_option("--kernel", options.kernel_degree, "Polynomial degree (1, 2 or 3)")
      ->check(CLI::Range(1, 10));
  snr->add_option("--c", options.c, "SVM box constraint")->check(CLI::PositiveNumber);
  snr->add_option("--snr-lo", options.snr_lo, "Lowest SNR in dB");
  snr->add_option("--snr-hi", options.snr_hi, "Highest SNR in dB");
  snr->add_option("--snr-count", options.snr_count, "Number of SNR levels")
      ->check(CLI::Range(2, 100000));
  snr->add_option("--seed", options.seed, "Noise seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (synth->parsed()) return run_synth(options, synth_duration_s, synth_rate_hz);
    if (features->parsed()) return run_features(options);
    if (pitch->parsed()) return run_pitch(options);
    if (train->parsed()) return run_train(options, features_path);
    if (classify->parsed()) return run_classify(options, model_path, features_path);
    if (evaluate->parsed()) return run_evaluate(options, all_classifiers);
    if (snr->parsed()) return run_snr_sweep(options);
  } catch (const dpa::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const dpa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

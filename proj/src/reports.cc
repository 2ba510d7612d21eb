// src/reports.cc

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

#include "dpa/reports.h"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dpa/error.h"

namespace dpa {

namespace {

// %.17g round-trips IEEE doubles exactly.
std::string fmt_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw DataError("cannot write " + tmp);
    file << content;
    if (!file) throw DataError("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void write_features_csv(const std::string& path, const std::vector<FeatureInstance>& instances) {
  if (instances.empty()) throw DataError("write_features_csv: nothing to write");
  const std::size_t dim = instances.front().coefficients.size();
  std::ostringstream out;
  out << "source_id,weight_g,window_s";
  for (std::size_t i = 0; i < dim; ++i) out << ",c" << i;
  out << "\n";
  for (const FeatureInstance& instance : instances) {
    if (instance.coefficients.size() != dim) {
      throw DataError("write_features_csv: instances disagree on dimensionality");
    }
    if (instance.source_id.find(',') != std::string::npos) {
      throw DataError("write_features_csv: source ids must not contain commas");
    }
    out << instance.source_id << ",";
    if (instance.payload_label.has_value()) out << *instance.payload_label;
    out << "," << fmt_short(instance.window_s);
    for (double c : instance.coefficients) out << "," << fmt_exact(c);
    out << "\n";
  }
  write_text_atomic(path, out.str());
}

std::vector<FeatureInstance> read_features_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open features csv: " + path);
  std::string line;
  if (!std::getline(file, line)) throw DataError("empty features csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 4 || header[0] != "source_id" || header[1] != "weight_g" ||
      header[2] != "window_s" || header[3] != "c0") {
    throw DataError("features csv: unexpected header in " + path);
  }
  const std::size_t dim = header.size() - 3;

  std::vector<FeatureInstance> instances;
  std::size_t line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != dim + 3) {
      throw DataError("features csv line " + std::to_string(line_no) + ": wrong field count");
    }
    FeatureInstance instance;
    instance.source_id = fields[0];
    if (!fields[1].empty()) {
      int label = 0;
      auto [p, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), label);
      if (ec != std::errc() || p != fields[1].data() + fields[1].size()) {
        throw DataError("features csv line " + std::to_string(line_no) + ": bad weight_g");
      }
      instance.payload_label = label;
    }
    try {
      instance.window_s = std::stod(fields[2]);
      instance.coefficients.reserve(dim);
      for (std::size_t i = 0; i < dim; ++i) instance.coefficients.push_back(std::stod(fields[3 + i]));
    } catch (const std::exception&) {
      throw DataError("features csv line " + std::to_string(line_no) + ": bad number");
    }
    instances.push_back(std::move(instance));
  }
  if (instances.empty()) throw DataError("features csv has no rows: " + path);
  return instances;
}

void write_pitch_csv(const std::string& path, const std::vector<PitchEstimate>& estimates) {
  std::ostringstream out;
  out << "source_id,weight_g,window_s,pitch_hz\n";
  for (const PitchEstimate& estimate : estimates) {
    out << estimate.source_id << ",";
    if (estimate.payload_label.has_value()) out << *estimate.payload_label;
    out << "," << fmt_short(estimate.window_s) << "," << fmt_exact(estimate.frequency_hz) << "\n";
  }
  write_text_atomic(path, out.str());
}

void write_error_curve_csv(const std::string& path, const std::vector<ErrorRatePoint>& curve) {
  std::ostringstream out;
  out << "weight_g,window_s,error_rate\n";
  for (const ErrorRatePoint& point : curve) {
    out << point.weight_g << "," << fmt_short(point.window_s) << ","
        << fmt_exact(point.error_rate) << "\n";
  }
  write_text_atomic(path, out.str());
}

void write_snr_curve_csv(const std::string& path, const std::vector<SnrPoint>& curve) {
  std::ostringstream out;
  out << "snr_db,window_s,accuracy\n";
  for (const SnrPoint& point : curve) {
    out << fmt_short(point.snr_db) << "," << fmt_short(point.window_s) << ","
        << fmt_exact(point.accuracy) << "\n";
  }
  write_text_atomic(path, out.str());
}

void write_confusion_csv(const std::string& path, const ConfusionMatrix& cm) {
  std::ostringstream out;
  for (int label : cm.classes) out << "," << label;
  out << "\n";
  for (std::size_t i = 0; i < cm.classes.size(); ++i) {
    out << cm.classes[i];
    for (std::int64_t v : cm.counts[i]) out << "," << v;
    out << "\n";
  }
  write_text_atomic(path, out.str());
}

void write_predictions_csv(const std::string& path, const std::vector<Prediction>& predictions) {
  std::ostringstream out;
  out << "source_id,weight_g,window_s,predicted_g\n";
  for (const Prediction& p : predictions) {
    out << p.source_id << ",";
    if (p.weight_g.has_value()) out << *p.weight_g;
    out << "," << fmt_short(p.window_s) << "," << p.predicted_g << "\n";
  }
  write_text_atomic(path, out.str());
}

std::string report_to_json(const EvaluationReport& report) {
  nlohmann::json j;
  j["experiment_id"] = report.experiment_id;
  nlohmann::json params;
  params["window_s"] = report.window_s;
  params["classifier"] = report.classifier.name();
  if (report.classifier.kind == ClassifierKind::kSvm) {
    params["kernel_degree"] = report.classifier.kernel.degree;
    params["c"] = report.classifier.c;
    params["tol"] = report.classifier.tol;
  }
  if (report.classifier.kind == ClassifierKind::kKnn) params["k"] = report.classifier.knn_k;
  params["train_frac"] = report.train_frac;
  if (report.snr_db.has_value()) params["snr_db"] = *report.snr_db;
  j["parameters"] = std::move(params);
  j["accuracy"] = report.accuracy_value;
  j["confusion"] = {{"classes", report.confusion.classes}, {"counts", report.confusion.counts}};
  nlohmann::json recall;
  for (std::size_t i = 0; i < report.confusion.classes.size(); ++i) {
    recall[std::to_string(report.confusion.classes[i])] = report.recall[i];
  }
  j["per_class_recall"] = std::move(recall);
  return j.dump(2) + "\n";
}

void write_report_json(const std::string& path, const EvaluationReport& report) {
  write_text_atomic(path, report_to_json(report));
}

}  // namespace dpa

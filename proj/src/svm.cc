// src/svm.cc

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

#include "dpa/svm.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include <json.hpp>

#include "dpa/error.h"

namespace dpa {

namespace {

double dot(const double* a, const double* b, std::size_t d) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) acc += a[i] * b[i];
  return acc;
}

double poly_kernel_raw(const double* a, const double* b, std::size_t d, int degree) {
  double base = dot(a, b, d) + 1.0;
  double k = base;
  for (int i = 1; i < degree; ++i) k *= base;
  return k;
}

// Kernel rows against the full training set, fully materialized for small
// problems and kept in a FIFO ring otherwise.
class GramCache {
 public:
  GramCache(const std::vector<double>& x, std::size_t n, std::size_t d, int degree)
      : x_(x), n_(n), d_(d), degree_(degree) {
    constexpr std::size_t kMaxFullEntries = 16u << 20;  // 128 MB of doubles
    full_ = n_ * n_ <= kMaxFullEntries;
    if (full_) {
      rows_.assign(n_ * n_, 0.0);
      for (std::size_t i = 0; i < n_; ++i) fill_row(i, rows_.data() + i * n_);
      return;
    }
    capacity_ = std::max<std::size_t>(2, kMaxFullEntries / n_);
    rows_.assign(capacity_ * n_, 0.0);
    slot_of_.assign(n_, kNone);
    owner_of_.assign(capacity_, kNone);
  }

  // The most recently returned row is never evicted, so two consecutive
  // fetches stay valid together through one optimizer step.
  const double* row(std::size_t i) {
    if (full_) return rows_.data() + i * n_;
    if (slot_of_[i] != kNone) {
      last_slot_ = slot_of_[i];
      return rows_.data() + last_slot_ * n_;
    }
    std::size_t slot = next_slot_;
    if (slot == last_slot_) slot = (slot + 1) % capacity_;
    next_slot_ = (slot + 1) % capacity_;
    if (owner_of_[slot] != kNone) slot_of_[owner_of_[slot]] = kNone;
    owner_of_[slot] = i;
    slot_of_[i] = slot;
    last_slot_ = slot;
    double* out = rows_.data() + slot * n_;
    fill_row(i, out);
    return out;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void fill_row(std::size_t i, double* out) const {
    const double* xi = x_.data() + i * d_;
    for (std::size_t j = 0; j < n_; ++j) {
      out[j] = poly_kernel_raw(xi, x_.data() + j * d_, d_, degree_);
    }
  }

  const std::vector<double>& x_;
  std::size_t n_, d_;
  int degree_;
  bool full_ = false;
  std::size_t capacity_ = 0;
  std::size_t next_slot_ = 0;
  std::size_t last_slot_ = kNone;
  std::vector<double> rows_;
  std::vector<std::size_t> slot_of_;
  std::vector<std::size_t> owner_of_;
};

int label_of(const FeatureInstance& instance) {
  if (!instance.payload_label.has_value()) {
    throw ConfigError("svm: every training instance needs a payload label");
  }
  return *instance.payload_label;
}

}  // namespace

double poly_kernel(std::span<const double> x1, std::span<const double> x2, int degree) {
  if (x1.size() != x2.size()) throw ConfigError("poly_kernel: dimension mismatch");
  if (degree < 1) throw ConfigError("poly_kernel: degree must be at least 1");
  return poly_kernel_raw(x1.data(), x2.data(), x1.size(), degree);
}

std::vector<int> LabeledDataset::classes() const {
  std::set<int> labels;
  for (const FeatureInstance& instance : instances) labels.insert(label_of(instance));
  return {labels.begin(), labels.end()};
}

std::size_t LabeledDataset::dim() const {
  if (instances.empty()) throw ConfigError("svm: empty dataset");
  const std::size_t d = instances.front().coefficients.size();
  for (const FeatureInstance& instance : instances) {
    if (instance.coefficients.size() != d) {
      throw ConfigError("svm: instances disagree on feature dimensionality");
    }
  }
  return d;
}

BinarySvm train_binary(const LabeledDataset& data, KernelSpec kernel,
                       const SvmTrainOptions& options, SvmTrainDiagnostics* diagnostics) {
  const std::vector<int> labels = data.classes();
  if (labels.size() != 2) throw ConfigError("train_binary: need exactly two classes");
  if (options.c <= 0.0 || options.tol <= 0.0) {
    throw ConfigError("train_binary: C and tol must be positive");
  }
  const std::size_t d = data.dim();
  const std::size_t n = data.instances.size();
  const int pos_label = labels[0];
  const double c = options.c;

  std::vector<double> x(n * d);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(data.instances[i].coefficients.begin(), data.instances[i].coefficients.end(),
              x.begin() + static_cast<std::ptrdiff_t>(i * d));
    y[i] = label_of(data.instances[i]) == pos_label ? 1.0 : -1.0;
  }

  GramCache cache(x, n, d, kernel.degree);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x.data() + i * d;
    diag[i] = poly_kernel_raw(xi, xi, d, kernel.degree);
  }

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 aQa - e.a at alpha = 0

  auto record_objective = [&]() {
    if (diagnostics == nullptr) return;
    double sum_alpha = 0.0, alpha_grad = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      sum_alpha += alpha[t];
      alpha_grad += alpha[t] * grad[t];
    }
    diagnostics->objective_trace.push_back(0.5 * (sum_alpha - alpha_grad));
  };

  long updates = 0;
  double gap = std::numeric_limits<double>::infinity();
  record_objective();
  while (true) {
    // Maximal-violating pair: i maximizes -y*grad over I_up, j minimizes it
    // over I_low.
    std::size_t i = n, j = n;
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      const bool in_up = (y[t] > 0.0 && alpha[t] < c) || (y[t] < 0.0 && alpha[t] > 0.0);
      const bool in_low = (y[t] < 0.0 && alpha[t] < c) || (y[t] > 0.0 && alpha[t] > 0.0);
      if (in_up && v > up_max) {
        up_max = v;
        i = t;
      }
      if (in_low && v < low_min) {
        low_min = v;
        j = t;
      }
    }
    if (i == n || j == n) break;  // one side fully bounded; optimum reached
    gap = up_max - low_min;
    if (gap <= options.tol) break;
    if (updates >= options.max_updates) {
      throw ConvergenceError("train_binary: hit the update cap with KKT gap " +
                                 std::to_string(gap) + " > tol " + std::to_string(options.tol),
                             gap);
    }

    const double* row_i = cache.row(i);
    const double kij = row_i[j];
    double a = diag[i] + diag[j] - 2.0 * kij;
    if (a <= 1e-12) a = 1e-12;

    // Step along alpha_i += y_i t, alpha_j -= y_j t.
    double t_step = (up_max - low_min) / a;  // equals -(y_i g_i - y_j g_j)/a
    double t_max = std::numeric_limits<double>::infinity();
    t_max = std::min(t_max, y[i] > 0.0 ? c - alpha[i] : alpha[i]);
    t_max = std::min(t_max, y[j] > 0.0 ? alpha[j] : c - alpha[j]);
    t_step = std::clamp(t_step, 0.0, t_max);

    alpha[i] += y[i] > 0.0 ? t_step : -t_step;
    alpha[j] -= y[j] > 0.0 ? t_step : -t_step;
    alpha[i] = std::clamp(alpha[i], 0.0, c);
    alpha[j] = std::clamp(alpha[j], 0.0, c);

    const double* row_j = cache.row(j);
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * t_step * (row_i[t] - row_j[t]);
    }
    ++updates;
    if (updates % static_cast<long>(n) == 0) record_objective();
  }
  record_objective();

  // b sits halfway between the active bounds; free multipliers pin it.
  double up_max = -std::numeric_limits<double>::infinity();
  double low_min = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    const double v = -y[t] * grad[t];
    if ((y[t] > 0.0 && alpha[t] < c) || (y[t] < 0.0 && alpha[t] > 0.0)) up_max = std::max(up_max, v);
    if ((y[t] < 0.0 && alpha[t] < c) || (y[t] > 0.0 && alpha[t] > 0.0)) low_min = std::min(low_min, v);
  }
  double bias = 0.0;
  if (std::isfinite(up_max) && std::isfinite(low_min)) {
    bias = 0.5 * (up_max + low_min);
  } else if (std::isfinite(up_max)) {
    bias = up_max;
  } else if (std::isfinite(low_min)) {
    bias = low_min;
  }

  BinarySvm model;
  model.dim = d;
  model.kernel = kernel;
  model.class_pair = {labels[0], labels[1]};
  model.bias = bias;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support_indices.push_back(t);
      model.dual_coeffs.push_back(alpha[t] * y[t]);
      const double* xt = x.data() + t * d;
      model.sv_data.insert(model.sv_data.end(), xt, xt + d);
    }
  }
  if (diagnostics != nullptr) {
    diagnostics->updates = updates;
    diagnostics->final_gap = gap;
  }
  return model;
}

double decision_value(const BinarySvm& model, std::span<const double> x) {
  if (x.size() != model.dim) throw ConfigError("decision_value: dimension mismatch");
  double acc = model.bias;
  for (std::size_t i = 0; i < model.n_support(); ++i) {
    acc += model.dual_coeffs[i] *
           poly_kernel_raw(model.sv_data.data() + i * model.dim, x.data(), model.dim,
                           model.kernel.degree);
  }
  return acc;
}

double kkt_violation(const BinarySvm& model, const LabeledDataset& data, double c) {
  std::map<std::size_t, double> alpha_of;
  for (std::size_t i = 0; i < model.n_support(); ++i) {
    alpha_of[model.support_indices[i]] = std::abs(model.dual_coeffs[i]);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < data.instances.size(); ++i) {
    const double y = label_of(data.instances[i]) == model.class_pair.first ? 1.0 : -1.0;
    const double yf = y * decision_value(model, data.instances[i].coefficients);
    auto it = alpha_of.find(i);
    const double alpha = it == alpha_of.end() ? 0.0 : it->second;
    double violation = 0.0;
    if (alpha <= 0.0) {
      violation = std::max(0.0, 1.0 - yf);
    } else if (alpha < c) {
      violation = std::abs(yf - 1.0);
    } else {
      violation = std::max(0.0, yf - 1.0);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

std::vector<double> Standardization::apply(std::span<const double> x) const {
  if (x.size() != mean.size()) throw ConfigError("standardization: dimension mismatch");
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - mean[i]) / scale[i];
  return z;
}

Standardization fit_standardization(const LabeledDataset& data) {
  const std::size_t d = data.dim();
  const auto n = static_cast<double>(data.instances.size());
  Standardization st;
  st.mean.assign(d, 0.0);
  st.scale.assign(d, 0.0);
  for (const FeatureInstance& instance : data.instances) {
    for (std::size_t i = 0; i < d; ++i) st.mean[i] += instance.coefficients[i];
  }
  for (double& m : st.mean) m /= n;
  for (const FeatureInstance& instance : data.instances) {
    for (std::size_t i = 0; i < d; ++i) {
      const double dev = instance.coefficients[i] - st.mean[i];
      st.scale[i] += dev * dev;
    }
  }
  for (double& s : st.scale) {
    s = std::sqrt(s / n);
    if (s < 1e-12) s = 1.0;  // constant feature
  }
  return st;
}

OvoSvmModel train_ovo(const LabeledDataset& data, KernelSpec kernel,
                      const SvmTrainOptions& options) {
  const std::vector<int> classes = data.classes();
  if (classes.size() < 2) throw ConfigError("train_ovo: need at least two classes");

  OvoSvmModel model;
  model.classes = classes;
  model.c = options.c;
  model.standardization = fit_standardization(data);

  std::map<int, std::vector<FeatureInstance>> by_class;
  for (const FeatureInstance& instance : data.instances) {
    FeatureInstance z = instance;
    z.coefficients = model.standardization.apply(instance.coefficients);
    by_class[label_of(instance)].push_back(std::move(z));
  }

  for (std::size_t a = 0; a < classes.size(); ++a) {
    for (std::size_t b = a + 1; b < classes.size(); ++b) {
      LabeledDataset pair;
      const auto& first = by_class[classes[a]];
      const auto& second = by_class[classes[b]];
      pair.instances.reserve(first.size() + second.size());
      pair.instances.insert(pair.instances.end(), first.begin(), first.end());
      pair.instances.insert(pair.instances.end(), second.begin(), second.end());
      try {
        model.binaries.push_back(train_binary(pair, kernel, options));
      } catch (const ConvergenceError& e) {
        throw ConvergenceError("train_ovo: pair (" + std::to_string(classes[a]) + ", " +
                                   std::to_string(classes[b]) + ") failed: " + e.what(),
                               e.worst_violation());
      }
    }
  }
  return model;
}

int predict(const OvoSvmModel& model, std::span<const double> x) {
  if (model.binaries.empty()) throw ConfigError("predict: model has no binaries");
  const std::vector<double> z = model.standardization.apply(x);

  std::map<int, int> votes;
  std::map<int, double> win_magnitude;
  for (int label : model.classes) {
    votes[label] = 0;
    win_magnitude[label] = 0.0;
  }
  for (const BinarySvm& binary : model.binaries) {
    const double f = decision_value(binary, z);
    const int winner = f > 0.0 ? binary.class_pair.first : binary.class_pair.second;
    votes[winner] += 1;
    win_magnitude[winner] += std::abs(f);
  }

  int best = model.classes.front();
  for (int label : model.classes) {
    if (votes[label] > votes[best]) {
      best = label;
    } else if (votes[label] == votes[best] && label != best) {
      if (win_magnitude[label] > win_magnitude[best]) best = label;
      // equal magnitude keeps the lower label, classes are ascending
    }
  }
  return best;
}

namespace {

using nlohmann::json;

json binary_to_json(const BinarySvm& binary) {
  json j;
  j["class_pair"] = {binary.class_pair.first, binary.class_pair.second};
  j["bias"] = binary.bias;
  j["dual_coeffs"] = binary.dual_coeffs;
  j["support_indices"] = binary.support_indices;
  json svs = json::array();
  for (std::size_t i = 0; i < binary.n_support(); ++i) {
    const auto sv = binary.support_vector(i);
    svs.push_back(std::vector<double>(sv.begin(), sv.end()));
  }
  j["support_vectors"] = std::move(svs);
  return j;
}

BinarySvm binary_from_json(const json& j, int degree) {
  BinarySvm binary;
  binary.kernel.degree = degree;
  binary.class_pair = {j.at("class_pair").at(0).get<int>(), j.at("class_pair").at(1).get<int>()};
  binary.bias = j.at("bias").get<double>();
  binary.dual_coeffs = j.at("dual_coeffs").get<std::vector<double>>();
  if (j.contains("support_indices")) {
    binary.support_indices = j.at("support_indices").get<std::vector<std::size_t>>();
  }
  const json& svs = j.at("support_vectors");
  if (svs.size() != binary.dual_coeffs.size()) {
    throw DataError("svm model: support vector and coefficient counts differ");
  }
  for (const json& sv : svs) {
    auto row = sv.get<std::vector<double>>();
    if (binary.dim == 0) binary.dim = row.size();
    if (row.size() != binary.dim) throw DataError("svm model: ragged support vectors");
    binary.sv_data.insert(binary.sv_data.end(), row.begin(), row.end());
  }
  return binary;
}

}  // namespace

std::string model_to_json(const OvoSvmModel& model) {
  json j;
  j["format"] = "dpa-svm-model";
  j["version"] = 1;
  j["kernel_degree"] = model.binaries.empty() ? 0 : model.binaries.front().kernel.degree;
  j["c"] = model.c;
  j["classes"] = model.classes;
  j["standardization"] = {{"mean", model.standardization.mean},
                          {"scale", model.standardization.scale}};
  json binaries = json::array();
  for (const BinarySvm& binary : model.binaries) binaries.push_back(binary_to_json(binary));
  j["binaries"] = std::move(binaries);
  return j.dump(2);
}

OvoSvmModel model_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("format", "") != "dpa-svm-model") {
    throw DataError("svm model: unrecognized format field");
  }
  if (j.value("version", 0) != 1) throw DataError("svm model: unsupported version");
  OvoSvmModel model;
  const int degree = j.at("kernel_degree").get<int>();
  model.c = j.at("c").get<double>();
  model.classes = j.at("classes").get<std::vector<int>>();
  model.standardization.mean = j.at("standardization").at("mean").get<std::vector<double>>();
  model.standardization.scale = j.at("standardization").at("scale").get<std::vector<double>>();
  for (const json& binary : j.at("binaries")) {
    model.binaries.push_back(binary_from_json(binary, degree));
  }
  const std::size_t n = model.classes.size();
  if (model.binaries.size() != n * (n - 1) / 2) {
    throw DataError("svm model: expected N(N-1)/2 binaries");
  }
  return model;
}

void save_model(const std::string& path, const OvoSvmModel& model) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    if (!file) throw DataError("cannot write model: " + tmp);
    file << model_to_json(model) << "\n";
    if (!file) throw DataError("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

OvoSvmModel load_model(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open model: " + path);
  std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  try {
    return model_from_json(text);
  } catch (const json::exception& e) {
    throw DataError("svm model: bad JSON in " + path + ": " + e.what());
  }
}

}  // namespace dpa

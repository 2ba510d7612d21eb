// dpa/reports.h

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

#ifndef DPA_REPORTS_H_
#define DPA_REPORTS_H_

#include <string>
#include <vector>

#include "dpa/eval.h"
#include "dpa/mfcc.h"
#include "dpa/pitch.h"

namespace dpa {

// All writers are atomic (temp file then rename) and deterministic: the same
// values always produce the same bytes. Floating-point fields are printed
// with enough digits to round-trip exactly.

void write_text_atomic(const std::string& path, const std::string& content);

// `source_id,weight_g,window_s,c0,...,c{R-1}`
void write_features_csv(const std::string& path, const std::vector<FeatureInstance>& instances);
std::vector<FeatureInstance> read_features_csv(const std::string& path);

// `source_id,weight_g,window_s,pitch_hz`
void write_pitch_csv(const std::string& path, const std::vector<PitchEstimate>& estimates);

// `weight_g,window_s,error_rate`
void write_error_curve_csv(const std::string& path, const std::vector<ErrorRatePoint>& curve);

// `snr_db,window_s,accuracy`
void write_snr_curve_csv(const std::string& path, const std::vector<SnrPoint>& curve);

// Class labels as header row and column.
void write_confusion_csv(const std::string& path, const ConfusionMatrix& cm);

// Predictions for test instances: `source_id,weight_g,window_s,predicted_g`.
void write_predictions_csv(const std::string& path, const std::vector<Prediction>& predictions);

// Full report without timing (timing belongs to run.json, which is the only
// artifact allowed to differ between identical runs).
std::string report_to_json(const EvaluationReport& report);
void write_report_json(const std::string& path, const EvaluationReport& report);

}  // namespace dpa

#endif  // DPA_REPORTS_H_

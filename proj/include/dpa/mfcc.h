// dpa/mfcc.h

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

#ifndef DPA_MFCC_H_
#define DPA_MFCC_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpa/audio.h"

namespace dpa {

enum class AnalysisWindow { kHamming, kRectangular };

// Frame-to-instance reduction for the per-window feature vector.
enum class FrameAggregation { kMean, kMedian };

struct MfccParams {
  int n_coefficients = 40;  // R
  int n_mel_bands = 40;     // M
  double frame_len_s = 0.03;
  double hop_len_s = 0.01;
  double fft_len_s = 0.03;
  double f_low_hz = 633.0;
  double f_high_hz = 6854.0;
  double preemphasis_alpha = 0.97;
  AnalysisWindow window = AnalysisWindow::kHamming;
  FrameAggregation aggregation = FrameAggregation::kMean;
  // When false, coefficient 0 (the log-energy proxy) is dropped and the
  // instance carries n_coefficients - 1 values.
  bool include_c0 = true;
};

// Triangular mel filters stored as sparse rows over one-sided FFT bins.
struct MelFilterbank {
  struct Row {
    int first_bin = 0;
    std::vector<double> weights;
  };
  std::vector<Row> rows;
  std::vector<double> center_freqs_hz;
  int fft_len = 0;
  int sample_rate_hz = 0;
};

// One feature vector for one analysis window.
struct FeatureInstance {
  std::vector<double> coefficients;
  double window_s = 0.0;
  std::optional<int> payload_label;
  std::string source_id;
};

// y[0] = x[0]; y[n] = x[n] - alpha * x[n-1].
std::vector<float> pre_emphasize(std::span<const float> x, double alpha);

// Mel(f) = 2595 * log10(1 + f / 700).
double mel_scale(double f_hz);
double inverse_mel(double mel);

// M triangular filters with apexes equally spaced on the mel axis between
// Mel(f_low) and Mel(f_high); edge filters ramp from f_low / to f_high.
// Weights are evaluated at the one-sided bin frequencies k * fs / fft_len.
MelFilterbank build_mel_filterbank(const MfccParams& params, int sample_rate_hz, int fft_len);

// Frame length and hop in samples for a given rate (round(frame_len_s * fs)).
int frame_length(const MfccParams& params, int sample_rate_hz);
int hop_length(const MfccParams& params, int sample_rate_hz);
int fft_length(const MfccParams& params, int sample_rate_hz);

// One-sided power spectrum per frame: frames of round(frame_len_s * fs)
// samples every round(hop_len_s * fs), tapered by the analysis window, then
// transformed at round(fft_len_s * fs) points.
std::vector<std::vector<double>> frame_and_spectrum(const AudioClip& clip,
                                                    const MfccParams& params);

// c_n = sum_{m=0}^{M-1} D(m) cos(pi n (m + 0.5) / M), n = 0..R-1.
std::vector<double> dct_cepstrum(std::span<const double> log_mel, int n_coefficients);

// Full pipeline for one analysis window: pre-emphasis, framing, spectrum,
// mel filterbank, log (energies floored at 1e-12), DCT, then the per-frame
// coefficient vectors reduced to one instance vector.
FeatureInstance extract_mfcc(const AudioClip& clip, const MfccParams& params,
                             const MelFilterbank& filterbank);

// Segments the clip at window_s and extracts one instance per window, in
// chronological order.
std::vector<FeatureInstance> extract_instances(const AudioClip& clip, double window_s,
                                               const MfccParams& params);

}  // namespace dpa

#endif  // DPA_MFCC_H_

// dpa/pitch.h

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

#ifndef DPA_PITCH_H_
#define DPA_PITCH_H_

#include <optional>
#include <string>
#include <vector>

#include "dpa/audio.h"

namespace dpa {

// Search band for the hover fundamental.
struct PitchBand {
  double f_lo_hz = 180.0;
  double f_hi_hz = 235.0;
};

struct PitchEstimate {
  double frequency_hz = 0.0;
  double window_s = 0.0;
  std::string source_id;
  std::optional<int> payload_label;
};

// Empirical pitch distribution for one payload class at one window length.
// Summary statistics are recomputed from the samples on demand.
struct PitchDistribution {
  std::vector<double> samples_hz;
  int payload_class = 0;
  double window_s = 0.0;

  double mean() const;
  double stddev() const;  // sample standard deviation, n - 1 denominator
  double min() const;
  double max() const;
};

// Brick-wall band-pass: transforms the whole window, zeroes every bin whose
// center frequency falls outside [f_lo, f_hi] (both spectrum halves), and
// inverse-transforms. Zero-phase; output is real and the same length.
AudioClip bandpass(const AudioClip& clip, double f_lo_hz, double f_hi_hz);

// Frequency of the largest in-band magnitude peak of the full-window
// spectrum (Hann-tapered), refined by quadratic interpolation over the peak
// bin and its two neighbors, clamped to the band.
PitchEstimate estimate_pitch(const AudioClip& clip, const PitchBand& band = {});

// One estimate per non-overlapping window of window_s seconds, in order.
// Same estimator as estimate_pitch, batched: the transform plan is shared
// and segments are packed two per complex FFT.
std::vector<PitchEstimate> estimate_pitch_segments(const AudioClip& clip, double window_s,
                                                   const PitchBand& band = {});

// Segments every clip at window_s and collects one pitch estimate per
// segment. All clips must share a payload label.
PitchDistribution build_pitch_distribution(const std::vector<AudioClip>& clips, double window_s,
                                           const PitchBand& band = {});

// Fraction of dist_w samples inside mean(dist_0) +/- sigma_mult * sd(dist_0).
double presence_error_rate(const PitchDistribution& dist_w, const PitchDistribution& dist_0,
                           double sigma_mult = 3.0);

// True when the clip's pitch falls outside the reference 0 g interval.
bool detect_payload(const AudioClip& clip, const PitchDistribution& ref_0g,
                    const PitchBand& band = {}, double sigma_mult = 3.0);

}  // namespace dpa

#endif  // DPA_PITCH_H_

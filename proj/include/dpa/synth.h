// dpa/synth.h

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

#ifndef DPA_SYNTH_H_
#define DPA_SYNTH_H_

#include <cstdint>
#include <vector>

#include "dpa/audio.h"

namespace dpa {

// Parameters for one synthetic hover recording: a harmonic stack on a slowly
// jittered fundamental, mimicking the blade signature of a loaded hover.
struct SynthProfile {
  int weight_g = 0;
  double base_pitch_hz = 195.0;
  double pitch_jitter_std_hz = 1.5;
  int n_harmonics = 20;
  double harmonic_rolloff_db = 2.0;  // per harmonic step
  double duration_s = 170.0;
  std::uint64_t seed = 1;
};

// Weight-to-pitch map: 195 Hz at 0 g rising linearly to 230 Hz at 500 g.
// The top class gets doubled jitter, matching the wider spread a drone shows
// near its payload limit.
SynthProfile default_profile(int weight_g);

// Renders the profile at the given rate: harmonics of a fundamental redrawn
// every 0.1 s from Normal(base, jitter), phase-continuous, peak-normalized
// to 0.9, plus a -40 dB broadband noise floor. Harmonics at or above 7 kHz
// are dropped. Deterministic per (profile, rate).
AudioClip synthesize(const SynthProfile& profile, int sample_rate_hz = 44100);

// The standard 11-class corpus: weights 0, 50, ..., 500 g.
std::vector<int> default_weights();

}  // namespace dpa

#endif  // DPA_SYNTH_H_

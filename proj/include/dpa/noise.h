// dpa/noise.h

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

#ifndef DPA_NOISE_H_
#define DPA_NOISE_H_

#include <cstdint>
#include <vector>

#include "dpa/audio.h"

namespace dpa {

// Mean of squared samples.
double mean_power(const AudioClip& clip);

// Adds zero-mean white Gaussian noise with variance
// mean_power(clip) / 10^(snr_db / 10). Deterministic per seed; the output is
// not re-normalized and may leave [-1, 1].
AudioClip add_awgn(const AudioClip& clip, double snr_db, std::uint64_t seed);

// Uniformly spaced SNR levels, inclusive of both endpoints.
struct SnrGrid {
  std::vector<double> levels_db;
  double lo_db = 0.0;
  double hi_db = 0.0;
  int count = 0;
};

SnrGrid snr_grid(double lo_db = 0.0, double hi_db = 8.8, int count = 183);

}  // namespace dpa

#endif  // DPA_NOISE_H_

// src/noise.cc

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

#include "dpa/noise.h"

#include <cmath>

#include "dpa/error.h"
#include "dpa/rng.h"

namespace dpa {

double mean_power(const AudioClip& clip) {
  if (clip.samples.empty()) throw DataError("mean_power: empty clip");
  double acc = 0.0;
  for (float s : clip.samples) acc += static_cast<double>(s) * static_cast<double>(s);
  return acc / static_cast<double>(clip.samples.size());
}

AudioClip add_awgn(const AudioClip& clip, double snr_db, std::uint64_t seed) {
  const double power = mean_power(clip);
  if (power <= 0.0) {
    throw DataError("add_awgn: silent clip, target SNR is undefined");
  }
  const double noise_std = std::sqrt(power / std::pow(10.0, snr_db / 10.0));

  AudioClip noisy = clip;
  SeededRng rng(seed);
  for (float& s : noisy.samples) {
    s = static_cast<float>(static_cast<double>(s) + noise_std * rng.gaussian());
  }
  return noisy;
}

SnrGrid snr_grid(double lo_db, double hi_db, int count) {
  if (count < 2) throw ConfigError("snr_grid: need at least two levels");
  if (!(lo_db < hi_db)) throw ConfigError("snr_grid: need lo < hi");
  SnrGrid grid;
  grid.lo_db = lo_db;
  grid.hi_db = hi_db;
  grid.count = count;
  grid.levels_db.resize(static_cast<std::size_t>(count));
  const double step = (hi_db - lo_db) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    grid.levels_db[static_cast<std::size_t>(i)] = lo_db + step * i;
  }
  grid.levels_db.front() = lo_db;
  grid.levels_db.back() = hi_db;  // exact endpoints
  return grid;
}

}  // namespace dpa

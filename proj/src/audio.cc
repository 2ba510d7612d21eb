// src/audio.cc

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

#include "dpa/audio.h"

#include <cmath>

#include "dpa/error.h"

namespace dpa {

std::vector<AudioClip> segment(const AudioClip& clip, double window_s) {
  if (clip.sample_rate_hz <= 0) throw ConfigError("segment: sample rate must be positive");
  auto window_len = static_cast<std::size_t>(std::llround(window_s * clip.sample_rate_hz));
  if (window_s <= 0.0 || window_len < 1) {
    throw ConfigError("segment: window must cover at least one sample");
  }
  std::size_t count = clip.samples.size() / window_len;
  std::vector<AudioClip> windows;
  windows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    AudioClip w;
    w.sample_rate_hz = clip.sample_rate_hz;
    w.source_id = clip.source_id;
    w.payload_label = clip.payload_label;
    auto begin = clip.samples.begin() + static_cast<std::ptrdiff_t>(i * window_len);
    w.samples.assign(begin, begin + static_cast<std::ptrdiff_t>(window_len));
    windows.push_back(std::move(w));
  }
  return windows;
}

}  // namespace dpa

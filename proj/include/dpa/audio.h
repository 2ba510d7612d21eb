// dpa/audio.h

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

#ifndef DPA_AUDIO_H_
#define DPA_AUDIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dpa {

// Mono sample sequence; the unit every stage of the pipeline operates on.
// File loading normalizes samples into [-1, 1]; noise injection may push
// them outside that range and the DSP tolerates it.
struct AudioClip {
  std::vector<float> samples;
  int sample_rate_hz = 44100;
  std::string source_id;
  std::optional<int> payload_label;  // carried weight in grams

  double duration_s() const {
    return static_cast<double>(samples.size()) / static_cast<double>(sample_rate_hz);
  }
};

// Splits a clip into consecutive non-overlapping windows of window_s seconds.
// The trailing remainder shorter than one window is discarded; label, sample
// rate and source id propagate. A window longer than the clip yields an
// empty list.
std::vector<AudioClip> segment(const AudioClip& clip, double window_s);

}  // namespace dpa

#endif  // DPA_AUDIO_H_

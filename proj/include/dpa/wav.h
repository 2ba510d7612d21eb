// dpa/wav.h

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

#ifndef DPA_WAV_H_
#define DPA_WAV_H_

#include <string>

#include "dpa/audio.h"

namespace dpa {

// Reads a RIFF/WAVE file holding PCM (8/16/24/32-bit integer) or 32-bit
// float samples. Multi-channel input is mixed to mono by the arithmetic mean
// of the channels; integer samples are scaled to [-1, 1] by the type's
// full-scale value. source_id is set to the path.
AudioClip load_wav(const std::string& path);

enum class WavEncoding {
  kPcm8,
  kPcm16,
  kPcm24,
  kPcm32,
  kFloat32,
};

// Writes a mono WAV file. The write is atomic (temp file then rename).
void write_wav(const std::string& path, const AudioClip& clip,
               WavEncoding encoding = WavEncoding::kPcm16);

}  // namespace dpa

#endif  // DPA_WAV_H_

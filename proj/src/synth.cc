// src/synth.cc

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

#include "dpa/synth.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "dpa/error.h"
#include "dpa/rng.h"

namespace dpa {

namespace {

constexpr double kHarmonicCeilingHz = 7000.0;
constexpr double kPitchRedrawS = 0.1;
constexpr double kPeakTarget = 0.9;
constexpr double kNoiseFloorDb = -40.0;

}  // namespace

SynthProfile default_profile(int weight_g) {
  if (weight_g < 0 || weight_g > 500) {
    throw ConfigError("default_profile: weight must be within 0..500 g");
  }
  SynthProfile profile;
  profile.weight_g = weight_g;
  profile.base_pitch_hz = 195.0 + 0.07 * weight_g;
  profile.pitch_jitter_std_hz = weight_g >= 500 ? 3.0 : 1.5;
  profile.seed = mix_seed(1, static_cast<std::uint64_t>(weight_g));
  return profile;
}

std::vector<int> default_weights() {
  std::vector<int> weights;
  for (int w = 0; w <= 500; w += 50) weights.push_back(w);
  return weights;
}

AudioClip synthesize(const SynthProfile& profile, int sample_rate_hz) {
  if (sample_rate_hz <= 0) throw ConfigError("synthesize: sample rate must be positive");
  if (profile.n_harmonics < 1) throw ConfigError("synthesize: need at least one harmonic");
  if (profile.pitch_jitter_std_hz < 0.0 || profile.harmonic_rolloff_db < 0.0) {
    throw ConfigError("synthesize: jitter and rolloff must be non-negative");
  }
  if (profile.duration_s <= 0.0) throw ConfigError("synthesize: duration must be positive");
  const double spread = 3.0 * profile.pitch_jitter_std_hz;
  if (profile.base_pitch_hz - spread < 170.0 || profile.base_pitch_hz + spread > 245.0) {
    throw ConfigError("synthesize: base pitch +/- 3 sigma must stay within [170, 245] Hz");
  }

  int n_harmonics = 0;
  for (int h = 1; h <= profile.n_harmonics; ++h) {
    if (h * profile.base_pitch_hz < kHarmonicCeilingHz) n_harmonics = h;
  }
  if (n_harmonics == 0) throw ConfigError("synthesize: all harmonics above the 7 kHz ceiling");
  if (2.0 * n_harmonics * profile.base_pitch_hz > sample_rate_hz) {
    throw ConfigError("synthesize: sample rate below twice the highest retained harmonic");
  }

  const auto n = static_cast<std::size_t>(std::llround(profile.duration_s * sample_rate_hz));
  const auto redraw_len =
      static_cast<std::size_t>(std::llround(kPitchRedrawS * sample_rate_hz));

  std::vector<double> amplitude(static_cast<std::size_t>(n_harmonics));
  for (int h = 0; h < n_harmonics; ++h) {
    amplitude[static_cast<std::size_t>(h)] =
        std::pow(10.0, -profile.harmonic_rolloff_db * h / 20.0);
  }

  SeededRng rng(profile.seed);
  std::vector<double> phase(static_cast<std::size_t>(n_harmonics));
  for (double& p : phase) p = 2.0 * std::numbers::pi * rng.uniform();

  std::vector<double> wave(n, 0.0);
  for (std::size_t start = 0; start < n; start += redraw_len) {
    const std::size_t stop = std::min(n, start + redraw_len);
    const double f0 = rng.gaussian(profile.base_pitch_hz, profile.pitch_jitter_std_hz);
    for (int h = 0; h < n_harmonics; ++h) {
      const double step =
          2.0 * std::numbers::pi * (h + 1) * f0 / static_cast<double>(sample_rate_hz);
      const std::complex<double> rot(std::cos(step), std::sin(step));
      std::complex<double> z = amplitude[static_cast<std::size_t>(h)] *
                               std::complex<double>(std::cos(phase[static_cast<std::size_t>(h)]),
                                                    std::sin(phase[static_cast<std::size_t>(h)]));
      for (std::size_t t = start; t < stop; ++t) {
        wave[t] += z.imag();
        z *= rot;
      }
      phase[static_cast<std::size_t>(h)] =
          std::fmod(phase[static_cast<std::size_t>(h)] + step * static_cast<double>(stop - start),
                    2.0 * std::numbers::pi);
    }
  }

  double peak = 0.0;
  for (double v : wave) peak = std::max(peak, std::abs(v));
  const double gain = peak > 0.0 ? kPeakTarget / peak : 0.0;
  const double floor_std = kPeakTarget * std::pow(10.0, kNoiseFloorDb / 20.0);

  AudioClip clip;
  clip.sample_rate_hz = sample_rate_hz;
  clip.payload_label = profile.weight_g;
  clip.source_id = "synth-" + std::to_string(profile.weight_g) + "g";
  clip.samples.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double v = wave[t] * gain + floor_std * rng.gaussian();
    clip.samples[t] = static_cast<float>(std::clamp(v, -1.0, 1.0));
  }
  return clip;
}

}  // namespace dpa

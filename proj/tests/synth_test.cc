// tests/synth_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dpa/error.h"
#include "dpa/pitch.h"
#include "dpa/synth.h"

using namespace dpa;

TEST_CASE("default profile maps weight to pitch linearly") {
  CHECK(default_profile(0).base_pitch_hz == doctest::Approx(195.0));
  CHECK(default_profile(0).pitch_jitter_std_hz == doctest::Approx(1.5));
  CHECK(default_profile(250).base_pitch_hz == doctest::Approx(212.5));
  CHECK(default_profile(500).base_pitch_hz == doctest::Approx(230.0));
  CHECK(default_profile(500).pitch_jitter_std_hz == doctest::Approx(3.0));
  CHECK_THROWS_AS(default_profile(-1), ConfigError);
  CHECK_THROWS_AS(default_profile(501), ConfigError);
}

TEST_CASE("default weights mirror the 11-class corpus") {
  const std::vector<int> weights = default_weights();
  REQUIRE(weights.size() == 11);
  CHECK(weights.front() == 0);
  CHECK(weights.back() == 500);
}

TEST_CASE("a jitter-free single harmonic is a recoverable pure tone") {
  SynthProfile profile = default_profile(100);
  profile.pitch_jitter_std_hz = 0.0;
  profile.n_harmonics = 1;
  profile.duration_s = 1.0;
  const AudioClip clip = synthesize(profile);
  CHECK(clip.payload_label == 100);
  const PitchEstimate estimate = estimate_pitch(clip);
  CHECK(std::abs(estimate.frequency_hz - profile.base_pitch_hz) <= 0.1);
}

TEST_CASE("synthesis is deterministic per profile and seed") {
  SynthProfile profile = default_profile(250);
  profile.duration_s = 2.0;
  const AudioClip a = synthesize(profile);
  const AudioClip b = synthesize(profile);
  CHECK(a.samples == b.samples);
  profile.seed += 1;
  const AudioClip c = synthesize(profile);
  CHECK(a.samples != c.samples);
}

TEST_CASE("samples stay within [-1, 1] and peak near 0.9") {
  SynthProfile profile = default_profile(450);
  profile.duration_s = 3.0;
  const AudioClip clip = synthesize(profile);
  float peak = 0.0f;
  for (float s : clip.samples) {
    CHECK(std::abs(s) <= 1.0f);
    peak = std::max(peak, std::abs(s));
  }
  CHECK(peak >= 0.85f);
}

TEST_CASE("pitch distribution means rise with weight") {
  double prev_mean = 0.0;
  for (int weight : {0, 150, 300, 450}) {
    SynthProfile profile = default_profile(weight);
    profile.duration_s = 25.0;
    const AudioClip clip = synthesize(profile);
    const PitchDistribution dist = build_pitch_distribution({clip}, 2.5);
    CHECK(dist.mean() > prev_mean);
    // Closure with the pitch oracle: the mean lands on the profile base.
    const double tolerance =
        3.0 * profile.pitch_jitter_std_hz / std::sqrt(static_cast<double>(dist.samples_hz.size())) +
        0.5;
    CHECK(std::abs(dist.mean() - profile.base_pitch_hz) <= tolerance);
    prev_mean = dist.mean();
  }
}

TEST_CASE("nyquist violations are rejected") {
  const SynthProfile profile = default_profile(0);
  CHECK_THROWS_AS(synthesize(profile, 800), ConfigError);
}

TEST_CASE("profile invariants are enforced") {
  SynthProfile profile = default_profile(0);
  profile.base_pitch_hz = 160.0;  // 3 sigma spills under 170 Hz
  CHECK_THROWS_AS(synthesize(profile), ConfigError);
  profile = default_profile(0);
  profile.pitch_jitter_std_hz = 30.0;
  CHECK_THROWS_AS(synthesize(profile), ConfigError);
}

// tests/pitch_test.cc

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
#include <numbers>
#include <random>

#include "dpa/error.h"
#include "dpa/noise.h"
#include "dpa/pitch.h"
#include "testutil.h"

using namespace dpa;

namespace {

// Tone whose frequency is redrawn from Normal(mean, sd) every 0.1 s, phase
// continuous; a hand-rolled stand-in for a jittery hover fundamental.
AudioClip jittered_tone(double mean_hz, double sd_hz, double duration_s, std::uint32_t seed,
                        int label) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> pitch(mean_hz, sd_hz);
  AudioClip clip;
  clip.sample_rate_hz = 44100;
  clip.payload_label = label;
  clip.source_id = "jitter";
  const auto n = static_cast<std::size_t>(duration_s * 44100);
  clip.samples.resize(n);
  double phase = 0.0;
  double f = pitch(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 4410 == 0 && i > 0) f = pitch(rng);
    phase += 2.0 * std::numbers::pi * f / 44100.0;
    clip.samples[i] = static_cast<float>(0.7 * std::sin(phase));
  }
  return clip;
}

PitchDistribution from_samples(std::vector<double> samples, int label, double window_s) {
  PitchDistribution dist;
  dist.samples_hz = std::move(samples);
  dist.payload_class = label;
  dist.window_s = window_s;
  return dist;
}

}  // namespace

TEST_CASE("bandpass keeps the band and rejects the rest") {
  SUBCASE("200 Hz tone passes with at least 99% of its power") {
    const AudioClip tone = test::make_tone(200.0, 1.0);
    const AudioClip filtered = bandpass(tone, 180.0, 235.0);
    CHECK(mean_power(filtered) / mean_power(tone) > 0.99);
  }
  SUBCASE("1 kHz tone is crushed below 1e-6 of its power") {
    const AudioClip tone = test::make_tone(1000.0, 1.0);
    const AudioClip filtered = bandpass(tone, 180.0, 235.0);
    CHECK(mean_power(filtered) / mean_power(tone) < 1e-6);
  }
  SUBCASE("zero in, zero out") {
    AudioClip silence;
    silence.sample_rate_hz = 44100;
    silence.samples.assign(44100, 0.0f);
    for (float s : bandpass(silence, 180.0, 235.0).samples) CHECK(s == 0.0f);
  }
  SUBCASE("band with no bins is a too-short error") {
    AudioClip clip = test::make_tone(200.0, 1.0, 44100);
    clip.samples.resize(64);  // bins 689 Hz apart, nothing inside [180, 235]
    CHECK_THROWS_AS(bandpass(clip, 180.0, 235.0), DataError);
  }
  SUBCASE("bad band is a configuration error") {
    const AudioClip tone = test::make_tone(200.0, 0.5);
    CHECK_THROWS_AS(bandpass(tone, 235.0, 180.0), ConfigError);
    CHECK_THROWS_AS(bandpass(tone, 0.0, 235.0), ConfigError);
  }
}

TEST_CASE("estimate_pitch on pure tones") {
  SUBCASE("200.0 Hz over 1 s within 0.1 Hz") {
    const PitchEstimate estimate = estimate_pitch(test::make_tone(200.0, 1.0));
    CHECK(estimate.frequency_hz == doctest::Approx(200.0).epsilon(0).scale(0).epsilon(0.0005));
    CHECK(std::abs(estimate.frequency_hz - 200.0) <= 0.1);
  }
  SUBCASE("210.3 Hz over 0.25 s within 1 Hz") {
    const PitchEstimate estimate = estimate_pitch(test::make_tone(210.3, 0.25));
    CHECK(std::abs(estimate.frequency_hz - 210.3) <= 1.0);
  }
  SUBCASE("dominant peak wins over a weaker in-band tone") {
    AudioClip two = test::make_tone(190.0, 1.0, 44100, 0.6);
    const AudioClip weak = test::make_tone(225.0, 1.0, 44100, 0.3);
    for (std::size_t i = 0; i < two.samples.size(); ++i) two.samples[i] += weak.samples[i];
    const PitchEstimate estimate = estimate_pitch(two);
    CHECK(std::abs(estimate.frequency_hz - 190.0) <= 0.5);
  }
  SUBCASE("sweep 180..235 Hz stays within one bin") {
    double worst = 0.0;
    for (int f = 180; f <= 235; ++f) {
      const PitchEstimate estimate = estimate_pitch(test::make_tone(f, 1.0));
      worst = std::max(worst, std::abs(estimate.frequency_hz - f));
    }
    CHECK(worst <= 1.0);  // bin width at 1 s
  }
  SUBCASE("silence has no pitch") {
    AudioClip silence;
    silence.sample_rate_hz = 44100;
    silence.samples.assign(44100, 0.0f);
    CHECK_THROWS_AS(estimate_pitch(silence), DataError);
  }
  SUBCASE("clips shorter than 0.25 s are rejected") {
    CHECK_THROWS_AS(estimate_pitch(test::make_tone(200.0, 0.1)), DataError);
  }
}

TEST_CASE("build_pitch_distribution") {
  SUBCASE("170 s at 2.5 s windows gives 68 samples") {
    const AudioClip trace = jittered_tone(205.0, 2.0, 170.0, 42, 100);
    const PitchDistribution dist = build_pitch_distribution({trace}, 2.5);
    CHECK(dist.samples_hz.size() == 68);
    CHECK(dist.payload_class == 100);
    CHECK(dist.window_s == 2.5);
  }
  SUBCASE("a single window distribution has that sample as its mean") {
    const AudioClip clip = jittered_tone(205.0, 0.0, 2.5, 1, 0);
    const PitchDistribution dist = build_pitch_distribution({clip}, 2.5);
    REQUIRE(dist.samples_hz.size() == 1);
    CHECK(dist.mean() == dist.samples_hz[0]);
  }
  SUBCASE("sample mean tracks the generator mean") {
    const AudioClip trace = jittered_tone(205.0, 2.0, 160.0, 9, 0);
    const PitchDistribution dist = build_pitch_distribution({trace}, 2.5);
    REQUIRE(dist.samples_hz.size() >= 60);
    CHECK(std::abs(dist.mean() - 205.0) <= 1.0);
  }
  SUBCASE("mixed labels are rejected") {
    AudioClip a = jittered_tone(200.0, 1.0, 5.0, 2, 0);
    AudioClip b = jittered_tone(210.0, 1.0, 5.0, 3, 50);
    CHECK_THROWS_AS(build_pitch_distribution({a, b}, 2.5), ConfigError);
  }
  SUBCASE("summary is recomputable from samples") {
    const PitchDistribution dist = from_samples({201.0, 199.0, 200.0}, 0, 1.0);
    CHECK(dist.mean() == doctest::Approx(200.0));
    CHECK(dist.min() == 199.0);
    CHECK(dist.max() == 201.0);
    CHECK(dist.stddev() == doctest::Approx(1.0));
  }
}

TEST_CASE("presence_error_rate") {
  std::mt19937 rng(11);
  std::normal_distribution<double> ref(200.0, 1.5);
  std::vector<double> zero_samples(100);
  for (double& v : zero_samples) v = ref(rng);
  const PitchDistribution dist_0 = from_samples(zero_samples, 0, 2.5);

  SUBCASE("a distribution against itself sits near full 3-sigma coverage") {
    CHECK(presence_error_rate(dist_0, dist_0) >= 0.9);
  }
  SUBCASE("disjoint supports give zero") {
    std::vector<double> lo, hi;
    for (int i = 0; i < 50; ++i) {
      lo.push_back(195.0 + 0.1 * i);  // [195, 200]
      hi.push_back(225.0 + 0.1 * i);  // [225, 230]
    }
    CHECK(presence_error_rate(from_samples(hi, 200, 2.5), from_samples(lo, 0, 2.5)) == 0.0);
  }
  SUBCASE("a +4 sigma shift leaves roughly the one-sided Gaussian tail inside") {
    // Analytic oracle: P(inside +/- 3 sigma | mean shifted 4 sigma) =
    // Phi(3 - 4) - Phi(-3 - 4) = 0.1587.
    std::vector<double> shifted(400);
    std::normal_distribution<double> gen(200.0 + 4.0 * 1.5, 1.5);
    for (double& v : shifted) v = gen(rng);
    const double rate = presence_error_rate(from_samples(shifted, 200, 2.5), dist_0);
    CHECK(rate >= 0.05);
    CHECK(rate <= 0.30);
  }
  SUBCASE("a +5 sigma shift drops the rate below 0.1") {
    std::vector<double> shifted(400);
    std::normal_distribution<double> gen(200.0 + 5.0 * 1.5, 1.5);
    for (double& v : shifted) v = gen(rng);
    CHECK(presence_error_rate(from_samples(shifted, 200, 2.5), dist_0) <= 0.1);
  }
  SUBCASE("rate is monotone non-increasing in the mean separation") {
    double prev = 1.1;
    for (double shift = 0.0; shift <= 8.0; shift += 1.0) {
      std::mt19937 local(23);  // same draws, shifted means only
      std::normal_distribution<double> gen(0.0, 1.5);
      std::vector<double> samples(400);
      for (double& v : samples) v = 200.0 + shift * 1.5 + gen(local);
      const double rate = presence_error_rate(from_samples(samples, 1, 2.5), dist_0);
      CHECK(rate <= prev + 1e-12);
      prev = rate;
    }
  }
  SUBCASE("window mismatch is a configuration error") {
    const PitchDistribution other = from_samples({200.0, 201.0}, 50, 1.0);
    CHECK_THROWS_AS(presence_error_rate(other, dist_0), ConfigError);
  }
}

TEST_CASE("detect_payload") {
  std::mt19937 rng(5);
  std::normal_distribution<double> ref(200.0, 1.0);
  std::vector<double> samples(200);
  for (double& v : samples) v = ref(rng);
  const PitchDistribution dist_0 = from_samples(samples, 0, 1.0);

  SUBCASE("a clip at the reference mean is not flagged") {
    CHECK_FALSE(detect_payload(test::make_tone(200.0, 1.0), dist_0));
  }
  SUBCASE("a clip 10 sigma away is flagged") {
    CHECK(detect_payload(test::make_tone(210.0, 1.0), dist_0));
  }
  SUBCASE("clips from the reference generator mostly pass") {
    int flagged = 0;
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
      const AudioClip clip = jittered_tone(200.0, 1.0, 1.0, 100 + seed, 0);
      if (detect_payload(clip, dist_0)) ++flagged;
    }
    CHECK(flagged <= 2);  // >= 0.9 pass rate
  }
}

// tests/mfcc_test.cc

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
#include "dpa/mfcc.h"
#include "testutil.h"

using namespace dpa;

TEST_CASE("pre-emphasis") {
  SUBCASE("alpha 0 is the identity") {
    const std::vector<float> x{0.1f, -0.4f, 0.9f};
    CHECK(pre_emphasize(x, 0.0) == x);
  }
  SUBCASE("constant input collapses to 0.03c") {
    const std::vector<float> x(10, 1.0f);
    const std::vector<float> y = pre_emphasize(x, 0.97);
    CHECK(y[0] == doctest::Approx(1.0));
    for (std::size_t i = 1; i < y.size(); ++i) CHECK(y[i] == doctest::Approx(0.03).epsilon(1e-6));
  }
  SUBCASE("impulse response") {
    const std::vector<float> y = pre_emphasize(std::vector<float>{1.0f, 0.0f, 0.0f}, 0.97);
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(-0.97).epsilon(1e-7));
    CHECK(y[2] == doctest::Approx(0.0));
  }
  SUBCASE("empty input gives empty output") { CHECK(pre_emphasize({}, 0.5).empty()); }
}

TEST_CASE("mel scale against frozen direct evaluations") {
  CHECK(mel_scale(0.0) == 0.0);
  CHECK(mel_scale(700.0) == doctest::Approx(781.1728387480312).epsilon(1e-12));
  CHECK(mel_scale(6854.0) == doctest::Approx(2680.839850538462).epsilon(1e-12));
  CHECK_THROWS_AS(mel_scale(-1.0), ConfigError);
  CHECK_THROWS_AS(inverse_mel(-0.5), ConfigError);
  CHECK(inverse_mel(0.0) == 0.0);
  CHECK(inverse_mel(mel_scale(1000.0)) == doctest::Approx(1000.0).epsilon(1e-9));
  CHECK(inverse_mel(781.1728387480312) == doctest::Approx(700.0).epsilon(1e-6));
}

TEST_CASE("mel scale is strictly monotone and inverts over the audio range") {
  double prev = -1.0;
  for (double f = 1.0; f <= 20000.0; f *= 1.07) {
    const double m = mel_scale(f);
    CHECK(m > prev);
    prev = m;
    CHECK(test::close_rel(inverse_mel(m), f, 1e-9));
  }
}

TEST_CASE("mel filterbank construction") {
  SUBCASE("M = 1 peaks at the mel midpoint") {
    MfccParams params;
    params.n_mel_bands = 1;
    params.n_coefficients = 1;
    const MelFilterbank fb = build_mel_filterbank(params, 44100, 1323);
    REQUIRE(fb.rows.size() == 1);
    CHECK(fb.center_freqs_hz[0] ==
          doctest::Approx(inverse_mel(0.5 * (mel_scale(633.0) + mel_scale(6854.0))))
              .epsilon(1e-9));
    CHECK(fb.center_freqs_hz[0] == doctest::Approx(2473.244711647685).epsilon(1e-9));
  }
  SUBCASE("a bin exactly on a filter center gets weight 1") {
    MfccParams params;
    params.n_mel_bands = 1;
    params.n_coefficients = 1;
    params.f_low_hz = 500.0;
    // Chosen so the single center lands exactly on the 1000 Hz bin.
    params.f_high_hz = inverse_mel(2.0 * mel_scale(1000.0) - mel_scale(500.0));
    const MelFilterbank fb = build_mel_filterbank(params, 8000, 800);  // 10 Hz bins
    const MelFilterbank::Row& row = fb.rows[0];
    const int center_bin = 100;
    REQUIRE(row.first_bin <= center_bin);
    REQUIRE(row.first_bin + static_cast<int>(row.weights.size()) > center_bin);
    CHECK(row.weights[static_cast<std::size_t>(center_bin - row.first_bin)] ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("default 40-band bank has strictly positive row sums") {
    const MelFilterbank fb = build_mel_filterbank(MfccParams{}, 44100, 1323);
    REQUIRE(fb.rows.size() == 40);
    for (const MelFilterbank::Row& row : fb.rows) {
      double sum = 0.0;
      for (double w : row.weights) {
        CHECK(w >= 0.0);
        sum += w;
      }
      CHECK(sum > 0.0);
    }
  }
  SUBCASE("centers are equally spaced in mel") {
    const MelFilterbank fb = build_mel_filterbank(MfccParams{}, 44100, 1323);
    const double step0 = mel_scale(fb.center_freqs_hz[1]) - mel_scale(fb.center_freqs_hz[0]);
    for (std::size_t i = 2; i < fb.center_freqs_hz.size(); ++i) {
      const double step = mel_scale(fb.center_freqs_hz[i]) - mel_scale(fb.center_freqs_hz[i - 1]);
      CHECK(test::close_rel(step, step0, 1e-9));
    }
  }
  SUBCASE("too few in-band bins is a configuration error") {
    CHECK_THROWS_AS(build_mel_filterbank(MfccParams{}, 44100, 64), ConfigError);
  }
}

TEST_CASE("frame_and_spectrum") {
  SUBCASE("exact-bin tone with rectangular window concentrates in one bin") {
    MfccParams params;
    params.window = AnalysisWindow::kRectangular;
    params.preemphasis_alpha = 0.0;
    AudioClip clip;
    clip.sample_rate_hz = 44100;
    clip.samples.resize(static_cast<std::size_t>(0.25 * 44100));
    for (std::size_t i = 0; i < clip.samples.size(); ++i) {
      clip.samples[i] = static_cast<float>(
          std::sin(2.0 * std::numbers::pi * 100.0 * static_cast<double>(i) / 1323.0));
    }
    const auto spectra = frame_and_spectrum(clip, params);
    REQUIRE(spectra.size() == 23);  // floor((11025 - 1323) / 441) + 1
    for (const std::vector<double>& power : spectra) {
      double total = 0.0;
      for (double p : power) total += p;
      CHECK(power[100] / total > 0.99);
    }
  }
  SUBCASE("all-zero clip gives all-zero spectra") {
    AudioClip clip;
    clip.sample_rate_hz = 44100;
    clip.samples.assign(44100, 0.0f);
    for (const auto& power : frame_and_spectrum(clip, MfccParams{})) {
      for (double p : power) CHECK(p == 0.0);
    }
  }
  SUBCASE("clip shorter than one frame is an error") {
    AudioClip clip;
    clip.sample_rate_hz = 44100;
    clip.samples.assign(1000, 0.1f);
    CHECK_THROWS_AS(frame_and_spectrum(clip, MfccParams{}), DataError);
  }
  SUBCASE("frame count arithmetic holds for random lengths") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      AudioClip clip;
      clip.sample_rate_hz = 44100;
      clip.samples.assign(std::uniform_int_distribution<std::size_t>(1323, 50000)(rng), 0.01f);
      const auto spectra = frame_and_spectrum(clip, MfccParams{});
      CHECK(spectra.size() == (clip.samples.size() - 1323) / 441 + 1);
    }
  }
}

TEST_CASE("dct_cepstrum") {
  SUBCASE("constant log-mel energizes only c0") {
    const std::vector<double> d(40, 1.0);
    const std::vector<double> c = dct_cepstrum(d, 40);
    CHECK(c[0] == doctest::Approx(40.0).epsilon(1e-12));
    for (std::size_t n = 1; n < c.size(); ++n) CHECK(std::abs(c[n]) < 1e-9);
  }
  SUBCASE("two-band example evaluates to sqrt(2)") {
    const std::vector<double> d{1.0, -1.0};
    const std::vector<double> c = dct_cepstrum(d, 2);
    CHECK(c[1] == doctest::Approx(1.4142135623730951).epsilon(1e-12));
  }
  SUBCASE("matches a long-double brute-force oracle on random inputs") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int seed = 0; seed < 120; ++seed) {
      std::vector<double> d(40);
      for (double& v : d) v = dist(rng);
      const std::vector<double> c = dct_cepstrum(d, 40);
      for (int n = 0; n < 40; ++n) {
        long double acc = 0.0L;
        for (int m = 0; m < 40; ++m) {
          acc += static_cast<long double>(d[static_cast<std::size_t>(m)]) *
                 cosl(static_cast<long double>(std::numbers::pi) * n * (m + 0.5L) / 40.0L);
        }
        CHECK(std::abs(c[static_cast<std::size_t>(n)] - static_cast<double>(acc)) < 1e-10);
      }
    }
  }
  SUBCASE("R above M is rejected") {
    CHECK_THROWS_AS(dct_cepstrum(std::vector<double>{1.0, 2.0}, 3), ConfigError);
  }
}

TEST_CASE("extract_mfcc") {
  MfccParams params;
  const MelFilterbank fb = build_mel_filterbank(params, 44100, 1323);

  SUBCASE("deterministic on identical clips") {
    const AudioClip clip = test::make_tone(1000.0, 1.0);
    const FeatureInstance a = extract_mfcc(clip, params, fb);
    const FeatureInstance b = extract_mfcc(clip, params, fb);
    REQUIRE(a.coefficients.size() == 40);
    CHECK(a.coefficients == b.coefficients);
  }
  SUBCASE("amplitude gain moves only c0, by M*log(gain^2)") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> dist(-0.05, 0.05);
    AudioClip noise;
    noise.sample_rate_hz = 44100;
    noise.samples.resize(44100);
    AudioClip scaled = noise;
    for (std::size_t i = 0; i < noise.samples.size(); ++i) {
      const double v = dist(rng);
      noise.samples[i] = static_cast<float>(v);
      scaled.samples[i] = static_cast<float>(10.0 * v);
    }
    const FeatureInstance a = extract_mfcc(noise, params, fb);
    const FeatureInstance b = extract_mfcc(scaled, params, fb);
    CHECK(b.coefficients[0] - a.coefficients[0] ==
          doctest::Approx(40.0 * std::log(100.0)).epsilon(1e-6));
    for (std::size_t n = 1; n < 40; ++n) {
      CHECK(std::abs(b.coefficients[n] - a.coefficients[n]) < 1e-6);
    }
  }
  SUBCASE("silence is handled through the energy floor, not a crash") {
    AudioClip silence;
    silence.sample_rate_hz = 44100;
    silence.samples.assign(44100, 0.0f);
    const FeatureInstance instance = extract_mfcc(silence, params, fb);
    for (double c : instance.coefficients) CHECK(std::isfinite(c));
  }
  SUBCASE("labels propagate and the c0 drop flag shortens the vector") {
    AudioClip clip = test::make_tone(1000.0, 0.25);
    clip.payload_label = 150;
    clip.source_id = "w150";
    const FeatureInstance with_c0 = extract_mfcc(clip, params, fb);
    CHECK(with_c0.payload_label == 150);
    CHECK(with_c0.source_id == "w150");
    MfccParams no_c0 = params;
    no_c0.include_c0 = false;
    const FeatureInstance dropped = extract_mfcc(clip, no_c0, fb);
    REQUIRE(dropped.coefficients.size() == 39);
    for (std::size_t n = 0; n < 39; ++n) {
      CHECK(dropped.coefficients[n] == with_c0.coefficients[n + 1]);
    }
  }
}

TEST_CASE("extract_instances yields one instance per window in order") {
  AudioClip clip = test::make_tone(900.0, 2.6);
  clip.payload_label = 300;
  const std::vector<FeatureInstance> instances = extract_instances(clip, 0.25, MfccParams{});
  CHECK(instances.size() == 10);
  for (const FeatureInstance& instance : instances) {
    CHECK(instance.window_s == 0.25);
    CHECK(instance.payload_label == 300);
    CHECK(instance.coefficients.size() == 40);
  }
}

// src/pitch.cc

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

#include "dpa/pitch.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "dpa/error.h"
#include "dpa/fft.h"

namespace dpa {

namespace {

// Below this duration the raw bin spacing exceeds 4 Hz and interpolation can
// no longer bridge it reliably.
constexpr double kMinPitchWindowS = 0.25;

struct BandBins {
  std::size_t k_lo = 0;
  std::size_t k_hi = 0;
  double bin_hz = 0.0;
};

BandBins band_bins(std::size_t n, int sample_rate_hz, const PitchBand& band) {
  const double nyquist = sample_rate_hz / 2.0;
  if (!(band.f_lo_hz > 0.0) || !(band.f_lo_hz < band.f_hi_hz) || !(band.f_hi_hz < nyquist)) {
    throw ConfigError("estimate_pitch: need 0 < f_lo < f_hi < sample_rate / 2");
  }
  BandBins bins;
  bins.bin_hz = static_cast<double>(sample_rate_hz) / static_cast<double>(n);
  bins.k_lo = std::max<std::size_t>(
      static_cast<std::size_t>(std::ceil(band.f_lo_hz / bins.bin_hz)), 1);
  bins.k_hi = std::min(static_cast<std::size_t>(std::floor(band.f_hi_hz / bins.bin_hz)), n / 2);
  if (bins.k_lo > bins.k_hi) {
    throw DataError("estimate_pitch: window too short, no FFT bin falls inside the band");
  }
  return bins;
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                   static_cast<double>(n - 1)));
    }
  }
  return w;
}

// Peak pick plus log-magnitude parabola over `mag`, a slice covering
// absolute bins [k_lo - 1, k_hi + 1] (entry 0 is bin k_lo - 1).
double interpolate_peak(const std::vector<double>& mag, const BandBins& bins,
                        const PitchBand& band) {
  std::size_t peak = 1;
  double peak_mag = -1.0;
  for (std::size_t i = 1; i + 1 < mag.size(); ++i) {
    if (mag[i] > peak_mag) {
      peak_mag = mag[i];
      peak = i;
    }
  }
  if (peak_mag <= 0.0) throw DataError("estimate_pitch: no pitch, in-band spectrum is zero");

  double delta = 0.0;
  const double m_prev = mag[peak - 1];
  const double m_next = mag[peak + 1];
  if (m_prev > 0.0 && m_next > 0.0) {
    const double a = std::log(m_prev);
    const double b = std::log(peak_mag);
    const double c = std::log(m_next);
    const double denom = a - 2.0 * b + c;
    if (std::abs(denom) > 1e-30) delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  }
  const double k_abs = static_cast<double>(bins.k_lo - 1 + peak) + delta;
  return std::clamp(k_abs * bins.bin_hz, band.f_lo_hz, band.f_hi_hz);
}

}  // namespace

double PitchDistribution::mean() const {
  if (samples_hz.empty()) throw DataError("pitch distribution is empty");
  double acc = 0.0;
  for (double v : samples_hz) acc += v;
  return acc / static_cast<double>(samples_hz.size());
}

double PitchDistribution::stddev() const {
  if (samples_hz.size() < 2) return 0.0;
  const double m = mean();
  double acc = 0.0;
  for (double v : samples_hz) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(samples_hz.size() - 1));
}

double PitchDistribution::min() const {
  if (samples_hz.empty()) throw DataError("pitch distribution is empty");
  return *std::min_element(samples_hz.begin(), samples_hz.end());
}

double PitchDistribution::max() const {
  if (samples_hz.empty()) throw DataError("pitch distribution is empty");
  return *std::max_element(samples_hz.begin(), samples_hz.end());
}

AudioClip bandpass(const AudioClip& clip, double f_lo_hz, double f_hi_hz) {
  const double nyquist = clip.sample_rate_hz / 2.0;
  if (!(f_lo_hz > 0.0) || !(f_lo_hz < f_hi_hz) || !(f_hi_hz < nyquist)) {
    throw ConfigError("bandpass: need 0 < f_lo < f_hi < sample_rate / 2");
  }
  const std::size_t n = clip.samples.size();
  if (n == 0) throw DataError("bandpass: empty clip");

  const Fft plan(n);
  std::vector<std::complex<double>> spec = plan.forward_real(std::span<const float>(clip.samples));
  const double bin_hz = static_cast<double>(clip.sample_rate_hz) / static_cast<double>(n);
  std::size_t kept = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t folded = std::min(k, n - k);  // distance from DC, both halves
    const double freq = static_cast<double>(folded) * bin_hz;
    if (freq < f_lo_hz || freq > f_hi_hz) {
      spec[k] = {0.0, 0.0};
    } else if (k <= n / 2) {
      ++kept;
    }
  }
  if (kept == 0) {
    throw DataError("bandpass: window too short, no FFT bin falls inside the band");
  }

  std::vector<std::complex<double>> filtered = plan.inverse(spec);
  AudioClip out;
  out.sample_rate_hz = clip.sample_rate_hz;
  out.source_id = clip.source_id;
  out.payload_label = clip.payload_label;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = static_cast<float>(filtered[i].real());
  return out;
}

PitchEstimate estimate_pitch(const AudioClip& clip, const PitchBand& band) {
  const std::size_t n = clip.samples.size();
  if (clip.duration_s() < kMinPitchWindowS) {
    throw DataError("estimate_pitch: window shorter than 0.25 s");
  }
  const BandBins bins = band_bins(n, clip.sample_rate_hz, band);

  // Hann taper keeps the interpolated peak location accurate off-bin.
  const std::vector<double> window = hann_window(n);
  std::vector<double> tapered(n);
  for (std::size_t i = 0; i < n; ++i) tapered[i] = window[i] * static_cast<double>(clip.samples[i]);
  const Fft plan(n);
  const std::vector<std::complex<double>> spec =
      plan.forward_real(std::span<const double>(tapered));

  std::vector<double> mag(bins.k_hi - bins.k_lo + 3);
  for (std::size_t k = bins.k_lo - 1; k <= bins.k_hi + 1; ++k) {
    mag[k - (bins.k_lo - 1)] = std::abs(spec[k]);
  }

  PitchEstimate estimate;
  estimate.frequency_hz = interpolate_peak(mag, bins, band);
  estimate.window_s = clip.duration_s();
  estimate.source_id = clip.source_id;
  estimate.payload_label = clip.payload_label;
  return estimate;
}

std::vector<PitchEstimate> estimate_pitch_segments(const AudioClip& clip, double window_s,
                                                   const PitchBand& band) {
  if (window_s < kMinPitchWindowS) {
    throw DataError("estimate_pitch: window shorter than 0.25 s");
  }
  const auto n = static_cast<std::size_t>(std::llround(window_s * clip.sample_rate_hz));
  if (n < 1) throw ConfigError("estimate_pitch_segments: window must cover a sample");
  const std::size_t count = clip.samples.size() / n;
  std::vector<PitchEstimate> estimates;
  if (count == 0) return estimates;

  const BandBins bins = band_bins(n, clip.sample_rate_hz, band);
  const std::vector<double> window = hann_window(n);
  const Fft plan(n);
  std::vector<std::complex<double>> buf(n);
  std::vector<std::complex<double>> spec(n);
  std::vector<double> mag(bins.k_hi - bins.k_lo + 3);

  // Two real segments per complex transform, split by conjugate symmetry.
  for (std::size_t pair = 0; pair < count; pair += 2) {
    const float* s0 = clip.samples.data() + pair * n;
    const float* s1 = pair + 1 < count ? clip.samples.data() + (pair + 1) * n : nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      buf[i] = {window[i] * static_cast<double>(s0[i]),
                s1 != nullptr ? window[i] * static_cast<double>(s1[i]) : 0.0};
    }
    plan.forward(buf.data(), spec.data());
    for (int half = 0; half < (s1 != nullptr ? 2 : 1); ++half) {
      for (std::size_t k = bins.k_lo - 1; k <= bins.k_hi + 1; ++k) {
        const std::complex<double> zk = spec[k];
        const std::complex<double> zm = std::conj(spec[(n - k) % n]);
        mag[k - (bins.k_lo - 1)] = 0.5 * std::abs(half == 0 ? zk + zm : zk - zm);
      }
      PitchEstimate estimate;
      estimate.frequency_hz = interpolate_peak(mag, bins, band);
      estimate.window_s = window_s;
      estimate.source_id = clip.source_id;
      estimate.payload_label = clip.payload_label;
      estimates.push_back(std::move(estimate));
    }
  }
  return estimates;
}

PitchDistribution build_pitch_distribution(const std::vector<AudioClip>& clips, double window_s,
                                           const PitchBand& band) {
  if (clips.empty()) throw DataError("build_pitch_distribution: no clips");
  if (!clips.front().payload_label.has_value()) {
    throw ConfigError("build_pitch_distribution: clips must carry a payload label");
  }
  const int label = *clips.front().payload_label;
  for (const AudioClip& clip : clips) {
    if (!clip.payload_label.has_value() || *clip.payload_label != label) {
      throw ConfigError("build_pitch_distribution: clips must share one payload label");
    }
  }

  PitchDistribution dist;
  dist.payload_class = label;
  dist.window_s = window_s;
  for (const AudioClip& clip : clips) {
    for (const PitchEstimate& estimate : estimate_pitch_segments(clip, window_s, band)) {
      dist.samples_hz.push_back(estimate.frequency_hz);
    }
  }
  if (dist.samples_hz.empty()) {
    throw DataError("build_pitch_distribution: no usable segments at this window length");
  }
  return dist;
}

double presence_error_rate(const PitchDistribution& dist_w, const PitchDistribution& dist_0,
                           double sigma_mult) {
  if (dist_w.samples_hz.empty() || dist_0.samples_hz.size() < 2) {
    throw DataError("presence_error_rate: distributions too small");
  }
  if (dist_w.window_s != dist_0.window_s) {
    throw ConfigError("presence_error_rate: window lengths differ");
  }
  const double center = dist_0.mean();
  const double radius = sigma_mult * dist_0.stddev();
  std::size_t inside = 0;
  for (double v : dist_w.samples_hz) {
    if (v >= center - radius && v <= center + radius) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(dist_w.samples_hz.size());
}

bool detect_payload(const AudioClip& clip, const PitchDistribution& ref_0g, const PitchBand& band,
                    double sigma_mult) {
  if (ref_0g.samples_hz.size() < 2) {
    throw DataError("detect_payload: reference distribution too small");
  }
  const double pitch = estimate_pitch(clip, band).frequency_hz;
  const double center = ref_0g.mean();
  const double radius = sigma_mult * ref_0g.stddev();
  return pitch < center - radius || pitch > center + radius;
}

}  // namespace dpa

// src/mfcc.cc

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

#include "dpa/mfcc.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "dpa/error.h"
#include "dpa/fft.h"

namespace dpa {

namespace {

constexpr double kEnergyFloor = 1e-12;

std::vector<double> make_window(AnalysisWindow kind, int len) {
  std::vector<double> w(static_cast<std::size_t>(len), 1.0);
  if (kind == AnalysisWindow::kHamming && len > 1) {
    for (int n = 0; n < len; ++n) {
      w[static_cast<std::size_t>(n)] =
          0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (len - 1));
    }
  }
  return w;
}

void validate_params(const MfccParams& params, int sample_rate_hz) {
  if (sample_rate_hz <= 0) throw ConfigError("mfcc: sample rate must be positive");
  if (params.n_mel_bands < 1) throw ConfigError("mfcc: need at least one mel band");
  if (params.n_coefficients < 1 || params.n_coefficients > params.n_mel_bands) {
    throw ConfigError("mfcc: need 1 <= R <= M");
  }
  if (!(params.f_low_hz > 0.0) || !(params.f_low_hz < params.f_high_hz) ||
      params.f_high_hz > sample_rate_hz / 2.0) {
    throw ConfigError("mfcc: need 0 < f_low < f_high <= sample_rate / 2");
  }
  if (params.hop_len_s <= 0.0 || params.hop_len_s > params.frame_len_s) {
    throw ConfigError("mfcc: need 0 < hop <= frame length");
  }
  if (params.preemphasis_alpha < 0.0 || params.preemphasis_alpha >= 1.0) {
    throw ConfigError("mfcc: pre-emphasis coefficient must be in [0, 1)");
  }
}

// Cosine table for c = T * D, T[n][m] = cos(pi n (m + 0.5) / M).
std::vector<double> dct_table(int n_coefficients, int n_bands) {
  std::vector<double> table(static_cast<std::size_t>(n_coefficients) *
                            static_cast<std::size_t>(n_bands));
  for (int n = 0; n < n_coefficients; ++n) {
    for (int m = 0; m < n_bands; ++m) {
      table[static_cast<std::size_t>(n) * n_bands + m] =
          std::cos(std::numbers::pi * n * (m + 0.5) / n_bands);
    }
  }
  return table;
}

}  // namespace

std::vector<float> pre_emphasize(std::span<const float> x, double alpha) {
  if (alpha < 0.0 || alpha >= 1.0) throw ConfigError("pre_emphasize: alpha must be in [0, 1)");
  std::vector<float> y(x.size());
  if (x.empty()) return y;
  y[0] = x[0];
  for (std::size_t n = 1; n < x.size(); ++n) {
    y[n] = static_cast<float>(static_cast<double>(x[n]) - alpha * static_cast<double>(x[n - 1]));
  }
  return y;
}

double mel_scale(double f_hz) {
  if (f_hz < 0.0) throw ConfigError("mel_scale: frequency must be non-negative");
  return 2595.0 * std::log10(1.0 + f_hz / 700.0);
}

double inverse_mel(double mel) {
  if (mel < 0.0) throw ConfigError("inverse_mel: mel value must be non-negative");
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

int frame_length(const MfccParams& params, int sample_rate_hz) {
  return static_cast<int>(std::llround(params.frame_len_s * sample_rate_hz));
}

int hop_length(const MfccParams& params, int sample_rate_hz) {
  return static_cast<int>(std::llround(params.hop_len_s * sample_rate_hz));
}

int fft_length(const MfccParams& params, int sample_rate_hz) {
  return static_cast<int>(std::llround(params.fft_len_s * sample_rate_hz));
}

MelFilterbank build_mel_filterbank(const MfccParams& params, int sample_rate_hz, int fft_len) {
  validate_params(params, sample_rate_hz);
  if (fft_len < 1) throw ConfigError("mfcc: FFT length must be positive");

  const int n_bands = params.n_mel_bands;
  const double mel_lo = mel_scale(params.f_low_hz);
  const double mel_hi = mel_scale(params.f_high_hz);
  const double mel_step = (mel_hi - mel_lo) / (n_bands + 1);
  const int n_bins = fft_len / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate_hz) / fft_len;

  int in_band = 0;
  std::vector<double> bin_mel(static_cast<std::size_t>(n_bins));
  for (int k = 0; k < n_bins; ++k) {
    double f = k * bin_hz;
    bin_mel[static_cast<std::size_t>(k)] = mel_scale(f);
    if (f > params.f_low_hz && f < params.f_high_hz) ++in_band;
  }
  if (in_band < n_bands) {
    throw ConfigError("mfcc: fewer in-band FFT bins than mel filters; lengthen the FFT");
  }

  MelFilterbank fb;
  fb.fft_len = fft_len;
  fb.sample_rate_hz = sample_rate_hz;
  fb.rows.resize(static_cast<std::size_t>(n_bands));
  fb.center_freqs_hz.resize(static_cast<std::size_t>(n_bands));
  for (int i = 0; i < n_bands; ++i) {
    const double left = mel_lo + mel_step * i;
    const double center = mel_lo + mel_step * (i + 1);
    const double right = mel_lo + mel_step * (i + 2);
    fb.center_freqs_hz[static_cast<std::size_t>(i)] = inverse_mel(center);

    MelFilterbank::Row row;
    row.first_bin = -1;
    for (int k = 0; k < n_bins; ++k) {
      const double m = bin_mel[static_cast<std::size_t>(k)];
      double w = 0.0;
      if (m > left && m <= center) {
        w = (m - left) / (center - left);
      } else if (m > center && m < right) {
        w = (right - m) / (right - center);
      }
      if (w > 0.0) {
        if (row.first_bin < 0) row.first_bin = k;
        row.weights.push_back(w);
      } else if (row.first_bin >= 0) {
        break;  // triangles are contiguous in frequency
      }
    }
    if (row.first_bin < 0) {
      throw ConfigError("mfcc: mel filter " + std::to_string(i) +
                        " covers no FFT bin; lengthen the FFT");
    }
    fb.rows[static_cast<std::size_t>(i)] = std::move(row);
  }
  return fb;
}

std::vector<std::vector<double>> frame_and_spectrum(const AudioClip& clip,
                                                    const MfccParams& params) {
  validate_params(params, clip.sample_rate_hz);
  const int frame_len = frame_length(params, clip.sample_rate_hz);
  const int hop_len = hop_length(params, clip.sample_rate_hz);
  const int fft_len = fft_length(params, clip.sample_rate_hz);
  if (frame_len < 1 || hop_len < 1 || fft_len < 1) {
    throw ConfigError("mfcc: frame, hop and FFT lengths must all be at least one sample");
  }
  if (clip.samples.size() < static_cast<std::size_t>(frame_len)) {
    throw DataError("mfcc: clip shorter than one analysis frame");
  }

  const std::size_t n_frames = (clip.samples.size() - frame_len) / hop_len + 1;
  const std::vector<double> window = make_window(params.window, frame_len);
  const int copy_len = std::min(frame_len, fft_len);
  const Fft plan(static_cast<std::size_t>(fft_len));
  const std::size_t n_bins = plan.bins();

  std::vector<std::vector<double>> spectra(n_frames);
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(fft_len));
  std::vector<std::complex<double>> out(static_cast<std::size_t>(fft_len));

  // Two real frames per complex transform: pack one in the real part, one in
  // the imaginary part, then split the spectra by conjugate symmetry.
  for (std::size_t pair = 0; pair + 1 < n_frames; pair += 2) {
    const float* f0 = clip.samples.data() + pair * hop_len;
    const float* f1 = clip.samples.data() + (pair + 1) * hop_len;
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    for (int j = 0; j < copy_len; ++j) {
      buf[static_cast<std::size_t>(j)] = {window[static_cast<std::size_t>(j)] * f0[j],
                                          window[static_cast<std::size_t>(j)] * f1[j]};
    }
    plan.forward(buf.data(), out.data());
    std::vector<double> p0(n_bins), p1(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
      const std::complex<double> zk = out[k];
      const std::complex<double> zm = std::conj(out[(fft_len - k) % fft_len]);
      p0[k] = 0.25 * std::norm(zk + zm);
      p1[k] = 0.25 * std::norm(zk - zm);
    }
    spectra[pair] = std::move(p0);
    spectra[pair + 1] = std::move(p1);
  }
  if (n_frames % 2 == 1) {
    const std::size_t last = n_frames - 1;
    const float* f0 = clip.samples.data() + last * hop_len;
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    for (int j = 0; j < copy_len; ++j) {
      buf[static_cast<std::size_t>(j)] = {window[static_cast<std::size_t>(j)] * f0[j], 0.0};
    }
    plan.forward(buf.data(), out.data());
    std::vector<double> p0(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) p0[k] = std::norm(out[k]);
    spectra[last] = std::move(p0);
  }
  return spectra;
}

std::vector<double> dct_cepstrum(std::span<const double> log_mel, int n_coefficients) {
  const int n_bands = static_cast<int>(log_mel.size());
  if (n_coefficients < 1 || n_coefficients > n_bands) {
    throw ConfigError("dct_cepstrum: need 1 <= R <= M");
  }
  std::vector<double> c(static_cast<std::size_t>(n_coefficients));
  for (int n = 0; n < n_coefficients; ++n) {
    double acc = 0.0;
    for (int m = 0; m < n_bands; ++m) {
      acc += log_mel[static_cast<std::size_t>(m)] *
             std::cos(std::numbers::pi * n * (m + 0.5) / n_bands);
    }
    c[static_cast<std::size_t>(n)] = acc;
  }
  return c;
}

FeatureInstance extract_mfcc(const AudioClip& clip, const MfccParams& params,
                             const MelFilterbank& filterbank) {
  if (filterbank.fft_len != fft_length(params, clip.sample_rate_hz) ||
      filterbank.sample_rate_hz != clip.sample_rate_hz ||
      static_cast<int>(filterbank.rows.size()) != params.n_mel_bands) {
    throw ConfigError("extract_mfcc: filterbank does not match params and sample rate");
  }

  AudioClip emphasized;
  emphasized.sample_rate_hz = clip.sample_rate_hz;
  emphasized.samples = pre_emphasize(clip.samples, params.preemphasis_alpha);
  const std::vector<std::vector<double>> spectra = frame_and_spectrum(emphasized, params);

  const int n_bands = params.n_mel_bands;
  const int n_coeff = params.n_coefficients;
  const std::vector<double> table = dct_table(n_coeff, n_bands);

  std::vector<double> log_mel(static_cast<std::size_t>(n_bands));
  std::vector<std::vector<double>> frame_coeffs;
  frame_coeffs.reserve(spectra.size());
  for (const std::vector<double>& power : spectra) {
    for (int i = 0; i < n_bands; ++i) {
      const MelFilterbank::Row& row = filterbank.rows[static_cast<std::size_t>(i)];
      double energy = 0.0;
      for (std::size_t j = 0; j < row.weights.size(); ++j) {
        energy += row.weights[j] * power[static_cast<std::size_t>(row.first_bin) + j];
      }
      log_mel[static_cast<std::size_t>(i)] = std::log(std::max(energy, kEnergyFloor));
    }
    std::vector<double> c(static_cast<std::size_t>(n_coeff));
    for (int n = 0; n < n_coeff; ++n) {
      const double* trow = table.data() + static_cast<std::size_t>(n) * n_bands;
      double acc = 0.0;
      for (int m = 0; m < n_bands; ++m) acc += trow[m] * log_mel[static_cast<std::size_t>(m)];
      c[static_cast<std::size_t>(n)] = acc;
    }
    frame_coeffs.push_back(std::move(c));
  }

  FeatureInstance instance;
  instance.window_s = clip.duration_s();
  instance.payload_label = clip.payload_label;
  instance.source_id = clip.source_id;
  instance.coefficients.assign(static_cast<std::size_t>(n_coeff), 0.0);
  if (params.aggregation == FrameAggregation::kMean) {
    for (const std::vector<double>& c : frame_coeffs) {
      for (int n = 0; n < n_coeff; ++n) instance.coefficients[static_cast<std::size_t>(n)] += c[static_cast<std::size_t>(n)];
    }
    for (double& v : instance.coefficients) v /= static_cast<double>(frame_coeffs.size());
  } else {
    std::vector<double> column(frame_coeffs.size());
    for (int n = 0; n < n_coeff; ++n) {
      for (std::size_t f = 0; f < frame_coeffs.size(); ++f) column[f] = frame_coeffs[f][static_cast<std::size_t>(n)];
      std::sort(column.begin(), column.end());
      const std::size_t mid = column.size() / 2;
      instance.coefficients[static_cast<std::size_t>(n)] =
          column.size() % 2 == 1 ? column[mid] : 0.5 * (column[mid - 1] + column[mid]);
    }
  }
  if (!params.include_c0) {
    instance.coefficients.erase(instance.coefficients.begin());
  }
  return instance;
}

std::vector<FeatureInstance> extract_instances(const AudioClip& clip, double window_s,
                                               const MfccParams& params) {
  const MelFilterbank filterbank =
      build_mel_filterbank(params, clip.sample_rate_hz, fft_length(params, clip.sample_rate_hz));
  std::vector<FeatureInstance> instances;
  for (const AudioClip& window : segment(clip, window_s)) {
    FeatureInstance instance = extract_mfcc(window, params, filterbank);
    instance.window_s = window_s;
    instances.push_back(std::move(instance));
  }
  return instances;
}

}  // namespace dpa

// src/fft.cc

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

#include "dpa/fft.h"

#include <cmath>
#include <numbers>

#include "dpa/error.h"

namespace dpa {

namespace {

using Cplx = std::complex<double>;

constexpr std::size_t kMaxDirectPrime = 61;

// Factors n into (radix, remaining) pairs, smallest primes first. Returns an
// empty list when some prime factor exceeds kMaxDirectPrime; the caller then
// sets up Bluestein instead.
std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> factors;
  std::size_t p = 2;
  while (n > 1) {
    while (n % p != 0) {
      p += (p == 2) ? 1 : 2;
      if (p > kMaxDirectPrime) return {};
    }
    n /= p;
    factors.push_back(p);
    factors.push_back(n);
  }
  return factors;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw ConfigError("fft: length must be positive");
  if (n == 1) return;
  factors_ = factorize(n);
  if (!factors_.empty()) {
    twiddle_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      double phase = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = Cplx(std::cos(phase), std::sin(phase));
    }
    // Per-level W_p^{qs} combination tables for the generic butterfly.
    stage_wp_.resize(factors_.size() / 2);
    for (std::size_t level = 0; level < stage_wp_.size(); ++level) {
      const std::size_t p = factors_[2 * level];
      if (p <= 3) continue;
      const std::size_t wstep = n / p;
      stage_wp_[level].resize(p * p);
      for (std::size_t q = 0; q < p; ++q) {
        for (std::size_t s = 0; s < p; ++s) {
          stage_wp_[level][q * p + s] = twiddle_[((q * s) % p) * wstep];
        }
      }
    }
    return;
  }

  // Chirp-z setup: a length-m power-of-two cyclic convolution with the
  // conjugate chirp realizes the length-n DFT.
  std::size_t m = next_pow2(2 * n - 1);
  conv_fft_ = std::make_unique<Fft>(m);
  chirp_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the phase argument small for very long transforms.
    unsigned __int128 k2 = static_cast<unsigned __int128>(k) * k;
    std::size_t r = static_cast<std::size_t>(k2 % (2 * n));
    double phase = -std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    chirp_[k] = Cplx(std::cos(phase), std::sin(phase));
  }
  std::vector<Cplx> kernel(m, Cplx(0.0, 0.0));
  for (std::size_t t = 0; t < n; ++t) {
    Cplx h = std::conj(chirp_[t]);
    kernel[t] = h;
    if (t > 0) kernel[m - t] = h;
  }
  chirp_kernel_fft_ = conv_fft_->forward(kernel);
}

void Fft::forward(const Cplx* in, Cplx* out) const { transform(in, out, false); }

void Fft::inverse(const Cplx* in, Cplx* out) const { transform(in, out, true); }

std::vector<Cplx> Fft::forward(const std::vector<Cplx>& in) const {
  if (in.size() != n_) throw ConfigError("fft: input length does not match plan");
  std::vector<Cplx> out(n_);
  forward(in.data(), out.data());
  return out;
}

std::vector<Cplx> Fft::inverse(const std::vector<Cplx>& in) const {
  if (in.size() != n_) throw ConfigError("fft: input length does not match plan");
  std::vector<Cplx> out(n_);
  inverse(in.data(), out.data());
  return out;
}

std::vector<Cplx> Fft::forward_real(std::span<const float> x) const {
  std::vector<Cplx> buf(n_, Cplx(0.0, 0.0));
  std::size_t m = x.size() < n_ ? x.size() : n_;
  for (std::size_t i = 0; i < m; ++i) buf[i] = Cplx(static_cast<double>(x[i]), 0.0);
  return forward(buf);
}

std::vector<Cplx> Fft::forward_real(std::span<const double> x) const {
  std::vector<Cplx> buf(n_, Cplx(0.0, 0.0));
  std::size_t m = x.size() < n_ ? x.size() : n_;
  for (std::size_t i = 0; i < m; ++i) buf[i] = Cplx(x[i], 0.0);
  return forward(buf);
}

std::vector<double> Fft::power_spectrum(std::span<const float> x) const {
  std::vector<Cplx> spec = forward_real(x);
  std::vector<double> power(bins());
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(spec[k]);
  return power;
}

void Fft::transform(const Cplx* in, Cplx* out, bool invert) const {
  if (n_ == 1) {
    out[0] = in[0];
    return;
  }
  if (!invert) {
    dispatch(in, out);
    return;
  }
  // Inverse through conjugation: ifft(x) = conj(fft(conj(x))) / n.
  std::vector<Cplx> conj_in(n_);
  for (std::size_t i = 0; i < n_; ++i) conj_in[i] = std::conj(in[i]);
  dispatch(conj_in.data(), out);
  double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = std::conj(out[i]) * scale;
}

void Fft::dispatch(const Cplx* in, Cplx* out) const {
  if (!factors_.empty()) {
    work(out, in, 1, 1, 0);
  } else {
    bluestein(in, out);
  }
}

// Recursive decimation-in-time step. `level` selects the (radix, m) pair for
// the current depth; the sub-transform length is radix * m and
// fstride * radix * m == n_ throughout the recursion.
void Fft::work(Cplx* out, const Cplx* in, std::size_t in_stride, std::size_t fstride,
               std::size_t level) const {
  const std::size_t p = factors_[2 * level];
  const std::size_t m = factors_[2 * level + 1];

  if (m == 1) {
    for (std::size_t q = 0; q < p; ++q) out[q] = in[q * in_stride];
  } else {
    for (std::size_t q = 0; q < p; ++q) {
      work(out + q * m, in + q * in_stride, in_stride * p, fstride * p, level + 1);
    }
  }

  const Cplx* tw = twiddle_.data();
  if (p == 2) {
    for (std::size_t u = 0; u < m; ++u) {
      Cplx t = out[m + u] * tw[u * fstride];
      out[m + u] = out[u] - t;
      out[u] += t;
    }
    return;
  }
  if (p == 3) {
    // X[u], X[u+m], X[u+2m] from T0, T1, T2 with W3 = -1/2 - i*sqrt(3)/2.
    constexpr double kHalfSqrt3 = 0.86602540378443864676;
    for (std::size_t u = 0; u < m; ++u) {
      Cplx t0 = out[u];
      Cplx t1 = out[m + u] * tw[u * fstride];
      Cplx t2 = out[2 * m + u] * tw[2 * u * fstride];
      Cplx s1 = t1 + t2;
      Cplx s2 = t1 - t2;
      Cplx rot(kHalfSqrt3 * s2.imag(), -kHalfSqrt3 * s2.real());  // -i*sqrt(3)/2 * s2
      out[u] = t0 + s1;
      out[m + u] = t0 - 0.5 * s1 + rot;
      out[2 * m + u] = t0 - 0.5 * s1 - rot;
    }
    return;
  }

  // Generic prime radix, with the W_p^{qs} table precomputed per level and
  // scratch on the stack (radix is capped at kMaxDirectPrime).
  const Cplx* wp = stage_wp_[level].data();
  Cplx t[kMaxDirectPrime + 1];
  Cplx res[kMaxDirectPrime + 1];
  for (std::size_t u = 0; u < m; ++u) {
    t[0] = out[u];
    std::size_t tw_index = u * fstride;
    for (std::size_t q = 1; q < p; ++q) {
      t[q] = out[q * m + u] * tw[tw_index];
      tw_index += u * fstride;
    }
    for (std::size_t s = 0; s < p; ++s) {
      Cplx acc = t[0];
      const Cplx* wrow = wp + s;
      for (std::size_t q = 1; q < p; ++q) acc += t[q] * wrow[q * p];
      res[s] = acc;
    }
    for (std::size_t s = 0; s < p; ++s) out[s * m + u] = res[s];
  }
}

void Fft::bluestein(const Cplx* in, Cplx* out) const {
  const std::size_t m = conv_fft_->size();
  std::vector<Cplx> a(m, Cplx(0.0, 0.0));
  for (std::size_t j = 0; j < n_; ++j) a[j] = in[j] * chirp_[j];
  std::vector<Cplx> spec(m);
  conv_fft_->forward(a.data(), spec.data());
  for (std::size_t k = 0; k < m; ++k) spec[k] *= chirp_kernel_fft_[k];
  std::vector<Cplx> conv(m);
  conv_fft_->inverse(spec.data(), conv.data());
  for (std::size_t k = 0; k < n_; ++k) out[k] = conv[k] * chirp_[k];
}

}  // namespace dpa

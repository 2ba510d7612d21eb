// dpa/fft.h

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

#ifndef DPA_FFT_H_
#define DPA_FFT_H_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace dpa {

// Complex DFT plan for one fixed length. Sizes factor into small primes via
// mixed-radix Cooley-Tukey; any size with a prime factor above 61 goes
// through Bluestein's chirp-z transform instead, so every length runs in
// O(n log n). A plan is immutable after construction and may be shared
// across threads.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  // One-sided spectrum length, n/2 + 1.
  std::size_t bins() const { return n_ / 2 + 1; }

  // out[k] = sum_j in[j] exp(-2 pi i j k / n). in and out must not alias.
  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  // Scaled inverse, so inverse(forward(x)) == x.
  void inverse(const std::complex<double>* in, std::complex<double>* out) const;

  std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& in) const;
  std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>>& in) const;

  std::vector<std::complex<double>> forward_real(std::span<const float> x) const;
  std::vector<std::complex<double>> forward_real(std::span<const double> x) const;

  // |X_k|^2 for k = 0..n/2 of a real signal, zero-padded or truncated to n.
  std::vector<double> power_spectrum(std::span<const float> x) const;

 private:
  void transform(const std::complex<double>* in, std::complex<double>* out, bool invert) const;
  void dispatch(const std::complex<double>* in, std::complex<double>* out) const;
  void work(std::complex<double>* out, const std::complex<double>* in, std::size_t in_stride,
            std::size_t fstride, std::size_t level) const;
  void bluestein(const std::complex<double>* in, std::complex<double>* out) const;

  std::size_t n_ = 0;
  std::vector<std::size_t> factors_;           // (radix, remaining-length) pairs
  std::vector<std::complex<double>> twiddle_;  // exp(-2 pi i k / n), k < n
  std::vector<std::vector<std::complex<double>>> stage_wp_;  // per-level radix tables

  // Bluestein state, populated only when the length needs the chirp-z path.
  std::unique_ptr<Fft> conv_fft_;
  std::vector<std::complex<double>> chirp_;  // exp(-i pi k^2 / n), k < n
  std::vector<std::complex<double>> chirp_kernel_fft_;
};

}  // namespace dpa

#endif  // DPA_FFT_H_

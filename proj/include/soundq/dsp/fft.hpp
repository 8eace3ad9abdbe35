// Copyright 2026 The SoundQ Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace soundq::dsp {

/// Real-to-complex FFT of a fixed size, backed by FFTW double precision.
/// Plan creation is serialized internally; forward()/inverse() use the
/// new-array execute interface and may be called concurrently from multiple
/// threads with distinct buffers.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  /// out[k] = sum_j in[j] exp(-2 pi i jk / n), k = 0..n/2.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;

  /// Inverse of forward(), normalized by 1/n. Preserves the input spectrum.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

 private:
  std::size_t n_;
  void* fwd_;
  void* inv_;
};

/// Complex in-place-size FFT, same concurrency contract as RealFft.
class ComplexFft {
 public:
  explicit ComplexFft(std::size_t n);
  ~ComplexFft();
  ComplexFft(const ComplexFft&) = delete;
  ComplexFft& operator=(const ComplexFft&) = delete;

  std::size_t size() const { return n_; }

  void forward(std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) const;

  /// Normalized by 1/n.
  void inverse(std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) const;

 private:
  std::size_t n_;
  void* fwd_;
  void* inv_;
};

}  // namespace soundq::dsp

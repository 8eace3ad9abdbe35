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

#include "soundq/dsp/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "soundq/error.hpp"

namespace soundq::dsp {

namespace {

// The FFTW planner is not thread-safe; new-array execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

void check_size(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "FFT size must be positive");
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  check_size(n);
  std::vector<double> real(n);
  std::vector<std::complex<double>> cplx(n / 2 + 1);
  std::scoped_lock lock(planner_mutex());
  fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(), as_fftw(cplx.data()),
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), as_fftw(cplx.data()), real.data(),
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
}

RealFft::~RealFft() {
  std::scoped_lock lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(inv_));
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != bins()) {
    throw Error(Errc::InvalidArgument, "FFT buffer size mismatch");
  }
  fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), const_cast<double*>(in.data()),
                       as_fftw(out.data()));
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  if (in.size() != bins() || out.size() != n_) {
    throw Error(Errc::InvalidArgument, "FFT buffer size mismatch");
  }
  // c2r destroys its input, so run on a scratch copy.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_), as_fftw(scratch.data()), out.data());
  const double norm = 1.0 / static_cast<double>(n_);
  for (auto& v : out) v *= norm;
}

ComplexFft::ComplexFft(std::size_t n) : n_(n) {
  check_size(n);
  std::vector<std::complex<double>> a(n);
  std::vector<std::complex<double>> b(n);
  std::scoped_lock lock(planner_mutex());
  fwd_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(a.data()), as_fftw(b.data()),
                          FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  inv_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(a.data()), as_fftw(b.data()),
                          FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

ComplexFft::~ComplexFft() {
  std::scoped_lock lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(inv_));
}

void ComplexFft::forward(std::span<const std::complex<double>> in,
                         std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw Error(Errc::InvalidArgument, "FFT buffer size mismatch");
  }
  fftw_execute_dft(static_cast<fftw_plan>(fwd_),
                   as_fftw(const_cast<std::complex<double>*>(in.data())),
                   as_fftw(out.data()));
}

void ComplexFft::inverse(std::span<const std::complex<double>> in,
                         std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw Error(Errc::InvalidArgument, "FFT buffer size mismatch");
  }
  fftw_execute_dft(static_cast<fftw_plan>(inv_),
                   as_fftw(const_cast<std::complex<double>*>(in.data())),
                   as_fftw(out.data()));
  const double norm = 1.0 / static_cast<double>(n_);
  for (auto& v : out) v *= norm;
}

}  // namespace soundq::dsp

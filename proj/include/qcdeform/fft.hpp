/*
   Copyright 2026 The qcdeform Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef QCDEFORM_FFT_HPP
#define QCDEFORM_FFT_HPP

#include <complex>
#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include <fftw3.h>

namespace qcdeform::fft {

using cplx = std::complex<double>;

namespace detail {

// Planning is not thread-safe in FFTW; execution of an existing plan on new
// arrays is. Plans are unaligned so any std::vector buffer is acceptable.
inline fftw_plan plan_for(int n, int sign) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<cplx> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

inline std::vector<cplx> run(std::span<const cplx> in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<cplx> src(in.begin(), in.end());
  std::vector<cplx> out(in.size());
  if (n == 0) return out;
  fftw_execute_dft(plan_for(n, sign), reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace detail

/// X_k = sum_m x_m exp(-2 pi i k m / n), unnormalized.
inline std::vector<cplx> forward(std::span<const cplx> in) {
  return detail::run(in, FFTW_FORWARD);
}

/// x_m = sum_k X_k exp(+2 pi i k m / n), unnormalized.
inline std::vector<cplx> backward(std::span<const cplx> in) {
  return detail::run(in, FFTW_BACKWARD);
}

/// Frequency of DFT bin k for a length-n transform, wrapped to [-n/2, n/2).
inline int frequency(int k, int n) { return k < (n + 1) / 2 ? k : k - n; }

/// DFT bin holding frequency m (any integer) for a length-n transform.
inline int bin(int m, int n) { return ((m % n) + n) % n; }

}  // namespace qcdeform::fft

#endif  // QCDEFORM_FFT_HPP

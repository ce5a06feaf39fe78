/*
 * Copyright 2026 The Aquaspec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "aquaspec/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "aquaspec/errors.hpp"

namespace aquaspec::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(AQUASPEC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend detect_backend() {
  if (const char* env = std::getenv("AQUASPEC_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2") {
      if (!cpu_has_avx2())
        throw ConfigError("AQUASPEC_KERNELS=avx2 but the CPU lacks AVX2");
      return Backend::avx2;
    }
    throw ConfigError("unknown AQUASPEC_KERNELS value: " + v);
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<int> g_backend{-1};

Backend current() {
  int b = g_backend.load(std::memory_order_acquire);
  if (b < 0) {
    b = static_cast<int>(detect_backend());
    g_backend.store(b, std::memory_order_release);
  }
  return static_cast<Backend>(b);
}

}  // namespace

Backend active_backend() { return current(); }

bool backend_supported(Backend b) {
  return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

void force_backend(Backend b) {
  if (!backend_supported(b))
    throw ArgumentError("kernel backend not supported on this CPU");
  g_backend.store(static_cast<int>(b), std::memory_order_release);
}

std::string_view backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

std::string_view backend_name() { return backend_name(current()); }

double dot(const double* a, const double* b, std::size_t n) {
#ifdef AQUASPEC_HAVE_AVX2_KERNELS
  if (current() == Backend::avx2) return avx2::dot(a, b, n);
#endif
  return scalar::dot(a, b, n);
}

double sum(const double* a, std::size_t n) {
#ifdef AQUASPEC_HAVE_AVX2_KERNELS
  if (current() == Backend::avx2) return avx2::sum(a, n);
#endif
  return scalar::sum(a, n);
}

double sqdist(const double* a, const double* b, std::size_t n) {
#ifdef AQUASPEC_HAVE_AVX2_KERNELS
  if (current() == Backend::avx2) return avx2::sqdist(a, b, n);
#endif
  return scalar::sqdist(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
#ifdef AQUASPEC_HAVE_AVX2_KERNELS
  if (current() == Backend::avx2) return avx2::axpy(alpha, x, y, n);
#endif
  return scalar::axpy(alpha, x, y, n);
}

}  // namespace aquaspec::kernels

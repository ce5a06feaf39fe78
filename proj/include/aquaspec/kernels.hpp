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

// Arithmetic kernels behind the numeric hot loops: band convolution
// (dot/sum over spectral windows), RBF kernels (sqdist) and network
// training (dot/axpy).  A scalar reference implementation always exists;
// an AVX2 variant is selected at runtime when the CPU supports it.
// Selection is per-process and independent of worker count, so results
// are reproducible on a given machine.

#pragma once

#include <cstddef>
#include <string_view>

namespace aquaspec::kernels {

enum class Backend { scalar, avx2 };

// Backend chosen for this process (cpuid probe, or AQUASPEC_KERNELS
// env override read once at first use).
Backend active_backend();
std::string_view backend_name();
std::string_view backend_name(Backend b);
bool backend_supported(Backend b);

// Test hook: pin the dispatch to one backend.  Throws ArgumentError if the
// CPU lacks it.
void force_backend(Backend b);

// Dispatched entry points.
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sqdist(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);

// Reference implementations, reachable directly for equivalence tests.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sqdist(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define AQUASPEC_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sqdist(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace aquaspec::kernels

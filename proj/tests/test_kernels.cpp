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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "aquaspec/kernels.hpp"
#include "aquaspec/rng.hpp"

using namespace aquaspec;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

// reference accumulation in extended precision
long double dot_ld(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += static_cast<long double>(a[i]) * static_cast<long double>(b[i]);
  return s;
}

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 33, 100, 257};

}  // namespace

TEST_CASE("scalar kernels match an extended-precision oracle") {
  Rng rng(11);
  for (std::size_t n : kSizes) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    CHECK(kernels::scalar::dot(a.data(), b.data(), n) ==
          doctest::Approx(static_cast<double>(dot_ld(a, b))).epsilon(1e-13));
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kernels::backend_supported(kernels::Backend::avx2)) return;

  Rng rng(22);
  for (std::size_t n : kSizes) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);

    const double scale = static_cast<double>(n) + 1.0;
    CHECK(std::fabs(kernels::avx2::dot(a.data(), b.data(), n) -
                    kernels::scalar::dot(a.data(), b.data(), n)) <= 1e-12 * scale);
    CHECK(std::fabs(kernels::avx2::sum(a.data(), n) - kernels::scalar::sum(a.data(), n)) <=
          1e-12 * scale);
    CHECK(std::fabs(kernels::avx2::sqdist(a.data(), b.data(), n) -
                    kernels::scalar::sqdist(a.data(), b.data(), n)) <= 1e-12 * scale);

    // axpy has no reduction: identical per-lane arithmetic, bitwise equal
    auto y1 = random_vector(n, rng);
    auto y2 = y1;
    kernels::scalar::axpy(0.37, a.data(), y1.data(), n);
    kernels::avx2::axpy(0.37, a.data(), y2.data(), n);
    CHECK(y1 == y2);
  }
}

TEST_CASE("dispatch routes to the forced backend") {
  const auto original = kernels::active_backend();

  const std::vector<double> a = {1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> b = {5.0, 4.0, 3.0, 2.0, 1.0};

  kernels::force_backend(kernels::Backend::scalar);
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  CHECK(kernels::backend_name() == "scalar");
  CHECK(kernels::dot(a.data(), b.data(), 5) == 35.0);
  CHECK(kernels::sum(a.data(), 5) == 15.0);
  CHECK(kernels::sqdist(a.data(), b.data(), 5) == 40.0);

  if (kernels::backend_supported(kernels::Backend::avx2)) {
    kernels::force_backend(kernels::Backend::avx2);
    CHECK(kernels::backend_name() == "avx2");
    CHECK(kernels::dot(a.data(), b.data(), 5) == doctest::Approx(35.0).epsilon(1e-15));
  }

  kernels::force_backend(original);
}

TEST_CASE("forcing an unsupported backend throws") {
  // scalar is always supported
  CHECK(kernels::backend_supported(kernels::Backend::scalar));
  if (!kernels::backend_supported(kernels::Backend::avx2))
    CHECK_THROWS_AS(kernels::force_backend(kernels::Backend::avx2), ArgumentError);
}

TEST_CASE("empty inputs") {
  CHECK(kernels::dot(nullptr, nullptr, 0) == 0.0);
  CHECK(kernels::sum(nullptr, 0) == 0.0);
  CHECK(kernels::sqdist(nullptr, nullptr, 0) == 0.0);
}

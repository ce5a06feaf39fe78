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

#pragma once

#include <cstddef>
#include <functional>

namespace aquaspec {

// One knob governs all internal parallelism.  0 means hardware concurrency.
void set_worker_count(unsigned n);
unsigned worker_count();

// Runs fn(i) for i in [0, n).  Work items must be independent; each item
// writes only to its own output slot, so results do not depend on the
// worker count.  Nested calls run inline on the calling worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace aquaspec

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <cstddef>
#include <functional>

namespace aniso {

// Hardware concurrency, at least 1.
int default_workers();

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index runs exactly once;
// callers write results into per-index slots so output never depends on scheduling.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace aniso

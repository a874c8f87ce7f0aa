// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "lqo/system.hpp"

namespace lqo
{

/// Upper bound on worker threads used inside a single operation. Defaults to 1.
void set_max_threads(int threads);
int max_threads();

/// Calls body(i) for i in [0, n). Iterations are split into contiguous static blocks, so any
/// body that only writes slot i gives results independent of the thread count. The first
/// exception thrown by a worker is rethrown on the calling thread.
void parallel_for(Index n, const std::function<void(Index)> &body);

}  // namespace lqo

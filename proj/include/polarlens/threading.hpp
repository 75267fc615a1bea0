/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <cstddef>

namespace polarlens {

// Worker count for parallel sections: POLARLENS_THREADS when set to a
// positive integer (values below 1 clamp to 1), otherwise the hardware
// concurrency capped at 8.
std::size_t thread_budget();

}  // namespace polarlens

/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/threading.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>

namespace polarlens {

std::size_t thread_budget() {
  if (const char* env = std::getenv("POLARLENS_THREADS"); env != nullptr) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
    if (ec == std::errc{} && ptr == env + std::strlen(env)) {
      return static_cast<std::size_t>(std::max(1L, std::min(value, 64L)));
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp<std::size_t>(hw == 0 ? 1 : hw, 1, 8);
}

}  // namespace polarlens

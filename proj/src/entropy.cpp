/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polarlens {

double entropy_bits(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) {
    throw std::invalid_argument("diversity: entropy of an empty multiset");
  }
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

EntropyStat normalized_entropy(std::span<const std::size_t> counts,
                               std::size_t k, std::string id) {
  if (k < 2) {
    throw std::invalid_argument("diversity: entropy needs k >= 2 categories");
  }
  if (counts.size() > k) {
    throw std::invalid_argument(
        "diversity: histogram has more bins than categories");
  }
  EntropyStat stat;
  stat.id = std::move(id);
  stat.raw_bits = entropy_bits(counts);
  stat.normalized =
      std::clamp(stat.raw_bits / std::log2(static_cast<double>(k)), 0.0, 1.0);
  for (std::size_t c : counts) stat.n_observations += c;
  return stat;
}

}  // namespace polarlens

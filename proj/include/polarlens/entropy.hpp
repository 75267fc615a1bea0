/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace polarlens {

// Normalized label entropy of one entity (a domain or a user).
struct EntropyStat {
  std::string id;
  double raw_bits = 0.0;      // Shannon entropy, base 2
  double normalized = 0.0;    // raw_bits / log2(k), in [0,1]
  std::size_t n_observations = 0;

  bool operator==(const EntropyStat&) const = default;
};

// Shannon entropy in bits of the empirical distribution behind a count
// histogram; 0*log(0) taken as 0. Errors if all counts are zero.
double entropy_bits(std::span<const std::size_t> counts);

// Entropy normalized by log2(k), so a uniform spread over all k
// categories scores 1 and a single-category multiset scores 0. The
// histogram may cover fewer than k categories (missing ones count 0).
// Errors when k < 2, when the histogram has more than k bins, or when
// it is empty.
EntropyStat normalized_entropy(std::span<const std::size_t> counts,
                               std::size_t k, std::string id = {});

}  // namespace polarlens

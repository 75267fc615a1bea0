/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/trigram.hpp"

#include <cmath>
#include <cstddef>
#include <unordered_map>

namespace polarlens {

namespace {

using TrigramCounts = std::unordered_map<std::string_view, std::size_t>;

TrigramCounts count_trigrams(std::string_view s) {
  TrigramCounts counts;
  if (s.size() >= 3) {
    counts.reserve(s.size() - 2);
    for (std::size_t i = 0; i + 3 <= s.size(); ++i) {
      ++counts[s.substr(i, 3)];
    }
  }
  return counts;
}

double squared_norm(const TrigramCounts& c) {
  double sum = 0.0;
  for (const auto& [_, n] : c) {
    sum += static_cast<double>(n) * static_cast<double>(n);
  }
  return sum;
}

}  // namespace

double trigram_cosine(std::string_view a, std::string_view b) {
  TrigramCounts ca = count_trigrams(a);
  TrigramCounts cb = count_trigrams(b);
  if (ca.empty() || cb.empty()) return 0.0;

  const TrigramCounts& small = ca.size() <= cb.size() ? ca : cb;
  const TrigramCounts& large = ca.size() <= cb.size() ? cb : ca;
  double dot = 0.0;
  for (const auto& [gram, n] : small) {
    if (auto it = large.find(gram); it != large.end()) {
      dot += static_cast<double>(n) * static_cast<double>(it->second);
    }
  }
  return dot / std::sqrt(squared_norm(ca) * squared_norm(cb));
}

}  // namespace polarlens

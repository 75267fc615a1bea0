/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polarlens/json.hpp"

#include "polarlens/records.hpp"
#include "polarlens/stance.hpp"

namespace polarlens {

// Row-stochastic stance-transition matrix. States follow StateOrdering:
// row/column 0 is the most control-leaning state. Rows whose count row
// is all zero (state never seen as a source) carry zero probabilities
// and are flagged empty.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;

  static TransitionMatrix from_counts(Tier tier,
                                      const std::vector<std::uint64_t>& counts);
  // Validates row sums (1 +- 1e-9, or an all-zero row). No count data.
  static TransitionMatrix from_probabilities(Tier tier,
                                             const std::vector<double>& probabilities);
  static TransitionMatrix identity(Tier tier);

  // Loads a square matrix of percentages (row sums ~100) or fractions
  // (row sums ~1) with an optional header line and row-label column;
  // rows are renormalized to sum to exactly 1, so lightly rounded
  // published tables stay row-stochastic. n must be 3 or 6.
  static TransitionMatrix from_csv_file(const std::filesystem::path& path);

  Json to_json() const;
  static TransitionMatrix from_json(const Json& j);

  Tier tier() const { return ordering_.tier; }
  const StateOrdering& ordering() const { return ordering_; }
  std::size_t n() const { return ordering_.size(); }

  double p(std::size_t i, std::size_t j) const { return probabilities_[i * n() + j]; }
  std::uint64_t count(std::size_t i, std::size_t j) const {
    return counts_.empty() ? 0 : counts_[i * n() + j];
  }
  bool has_counts() const { return !counts_.empty(); }
  std::uint64_t total_transitions() const;
  bool row_empty(std::size_t i) const { return empty_rows_[i]; }
  bool has_empty_rows() const;

 private:
  StateOrdering ordering_{Tier::High};
  std::vector<std::uint64_t> counts_;      // n*n row-major; empty if unknown
  std::vector<double> probabilities_;      // n*n row-major
  std::vector<bool> empty_rows_;

  void derive_from_counts();
};

struct TrailOptions {
  bool per_session = false;  // start a fresh trail at each session change
  std::optional<std::set<std::string>> user_filter;
};

// Estimates the transition matrix from click trails: per user, visits
// sorted by timestamp, OffTopic/NotAccessible and unlabeled URLs
// dropped, consecutive same-domain visits collapsed to the first, and
// every consecutive distinct-domain pair counted as one transition.
// Errors when no transitions qualify. Labels resolve by exact
// normalized URL first, then by bare registered domain.
// Honors POLARLENS_THREADS for the per-user partitioned count.
TransitionMatrix build_transition_matrix(const Dataset& ds, Tier tier,
                                         const TrailOptions& opts = {});

// Per-user collapsed trails (state index sequences), sorted by user id.
// Exposed for the mediator scan and for closure testing.
std::vector<std::pair<std::string, std::vector<std::size_t>>> build_trails(
    const Dataset& ds, Tier tier, const TrailOptions& opts = {});

}  // namespace polarlens

/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>

#include "polarlens/records.hpp"
#include "polarlens/url.hpp"

namespace polarlens {

// Bipartite query-click graph: queries on one side, normalized clicked
// URLs on the other, edges weighted by click count.
class QueryClickGraph {
 public:
  enum class Weighting { ClickCount, Uniform };

  static QueryClickGraph build(std::span<const QueryRecord> records,
                               const UrlNormalizeOptions& opts = {});

  bool has_query(const std::string& query) const {
    return by_query_.count(query) != 0;
  }
  std::size_t query_count() const { return by_query_.size(); }
  std::size_t url_count() const { return by_url_.size(); }
  std::size_t total_clicks() const { return total_clicks_; }

  // Queries reachable from the seed set in exactly two steps
  // (query -> clicked URL -> co-clicking query). Seeds absent from the
  // graph are ignored; seeds themselves are included in the result
  // whenever they are in the graph.
  std::set<std::string> co_clicked(const std::set<std::string>& seeds) const;

  // Probability of landing on each query after a two-step random walk
  // that starts uniformly over the seeds present in the graph. Steps
  // follow edges with probability proportional to click counts, or
  // uniformly over a node's edges. Descriptive output only; candidate
  // expansion uses exact reachability, not a probability cutoff.
  std::map<std::string, double> walk_probabilities(
      const std::set<std::string>& seeds, Weighting weighting) const;

 private:
  using Edges = std::map<std::string, std::size_t>;
  std::unordered_map<std::string, Edges> by_query_;
  std::unordered_map<std::string, Edges> by_url_;
  std::size_t total_clicks_ = 0;
};

}  // namespace polarlens

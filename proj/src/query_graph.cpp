/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/query_graph.hpp"

#include <vector>

namespace polarlens {

QueryClickGraph QueryClickGraph::build(std::span<const QueryRecord> records,
                                       const UrlNormalizeOptions& opts) {
  QueryClickGraph g;
  for (const auto& r : records) {
    if (r.clicked_url.empty()) continue;
    std::string url = normalize_url(r.clicked_url, opts);
    ++g.by_query_[r.query][url];
    ++g.by_url_[url][r.query];
    ++g.total_clicks_;
  }
  return g;
}

std::set<std::string> QueryClickGraph::co_clicked(
    const std::set<std::string>& seeds) const {
  std::set<std::string> out;
  for (const auto& seed : seeds) {
    auto qit = by_query_.find(seed);
    if (qit == by_query_.end()) continue;
    out.insert(seed);
    for (const auto& [url, _] : qit->second) {
      for (const auto& [query, _2] : by_url_.at(url)) {
        out.insert(query);
      }
    }
  }
  return out;
}

std::map<std::string, double> QueryClickGraph::walk_probabilities(
    const std::set<std::string>& seeds, Weighting weighting) const {
  std::vector<const Edges*> starts;
  for (const auto& seed : seeds) {
    if (auto it = by_query_.find(seed); it != by_query_.end()) {
      starts.push_back(&it->second);
    }
  }
  std::map<std::string, double> probs;
  if (starts.empty()) return probs;

  auto edge_weight = [&](std::size_t clicks) {
    return weighting == Weighting::ClickCount ? static_cast<double>(clicks)
                                              : 1.0;
  };
  auto total_weight = [&](const Edges& edges) {
    double sum = 0.0;
    for (const auto& [_, clicks] : edges) sum += edge_weight(clicks);
    return sum;
  };

  const double p_start = 1.0 / static_cast<double>(starts.size());
  for (const Edges* q_edges : starts) {
    double q_total = total_weight(*q_edges);
    for (const auto& [url, clicks] : *q_edges) {
      double p_url = p_start * edge_weight(clicks) / q_total;
      const Edges& u_edges = by_url_.at(url);
      double u_total = total_weight(u_edges);
      for (const auto& [query, back_clicks] : u_edges) {
        probs[query] += p_url * edge_weight(back_clicks) / u_total;
      }
    }
  }
  return probs;
}

}  // namespace polarlens

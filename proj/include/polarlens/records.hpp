/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "polarlens/stance.hpp"

namespace polarlens {

// One toolbar page visit. Timestamps are epoch seconds.
struct LogRecord {
  std::string user_id;
  std::string session_id;
  std::string url;
  std::int64_t timestamp = 0;
};

// One search event; clicked_url is empty when no result was clicked.
struct QueryRecord {
  std::string user_id;
  std::string session_id;
  std::string query;
  std::string clicked_url;
  std::int64_t timestamp = 0;
};

// Stance labels keyed by normalized URL or bare registered domain.
using LabelMap = std::unordered_map<std::string, ExpandedLabel>;

struct Dataset {
  std::vector<LogRecord> visits;
  std::vector<QueryRecord> queries;
  LabelMap labels;
};

struct DatasetSummary {
  std::size_t users = 0;
  std::size_t sessions = 0;
  std::size_t unique_urls = 0;       // after normalization
  std::size_t unique_domains = 0;    // registered domains
  std::size_t total_visits = 0;

  bool operator==(const DatasetSummary&) const = default;
};

// Splits visits and queries at an event time: records with
// timestamp < event_time land in the first half, records with
// timestamp >= event_time in the second. Labels are shared by both.
std::pair<Dataset, Dataset> split_by_event(const Dataset& ds,
                                           std::int64_t event_time);

// user_ids with any visit or query activity in both datasets.
std::set<std::string> common_users(const Dataset& a, const Dataset& b);

// Restriction of a dataset to a set of users.
Dataset filter_users(const Dataset& ds, const std::set<std::string>& users);

// Counts over the visitation records (queries do not contribute).
// URLs are normalized before the distinct-URL/domain counts.
DatasetSummary summarize(const Dataset& ds);

}  // namespace polarlens

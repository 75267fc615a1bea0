/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include <algorithm>
#include <iterator>
#include <unordered_set>
#include <utility>

#include "polarlens/records.hpp"
#include "polarlens/url.hpp"

namespace polarlens {

std::pair<Dataset, Dataset> split_by_event(const Dataset& ds,
                                           std::int64_t event_time) {
  Dataset before;
  Dataset after;
  before.labels = ds.labels;
  after.labels = ds.labels;
  for (const auto& v : ds.visits) {
    (v.timestamp < event_time ? before : after).visits.push_back(v);
  }
  for (const auto& q : ds.queries) {
    (q.timestamp < event_time ? before : after).queries.push_back(q);
  }
  return {std::move(before), std::move(after)};
}

namespace {

std::set<std::string> active_users(const Dataset& ds) {
  std::set<std::string> users;
  for (const auto& v : ds.visits) users.insert(v.user_id);
  for (const auto& q : ds.queries) users.insert(q.user_id);
  return users;
}

}  // namespace

std::set<std::string> common_users(const Dataset& a, const Dataset& b) {
  std::set<std::string> ua = active_users(a);
  std::set<std::string> ub = active_users(b);
  std::set<std::string> out;
  std::set_intersection(ua.begin(), ua.end(), ub.begin(), ub.end(),
                        std::inserter(out, out.end()));
  return out;
}

Dataset filter_users(const Dataset& ds, const std::set<std::string>& users) {
  Dataset out;
  out.labels = ds.labels;
  for (const auto& v : ds.visits) {
    if (users.count(v.user_id) != 0) out.visits.push_back(v);
  }
  for (const auto& q : ds.queries) {
    if (users.count(q.user_id) != 0) out.queries.push_back(q);
  }
  return out;
}

DatasetSummary summarize(const Dataset& ds) {
  DatasetSummary s;
  std::unordered_set<std::string> users;
  std::unordered_set<std::string> sessions;  // keyed (user, session)
  std::unordered_set<std::string> urls;
  std::unordered_set<std::string> domains;
  for (const auto& v : ds.visits) {
    users.insert(v.user_id);
    sessions.insert(v.user_id + '\x1f' + v.session_id);
    std::string nu = normalize_url(v.url);
    domains.insert(registered_domain(nu));
    urls.insert(std::move(nu));
  }
  s.users = users.size();
  s.sessions = sessions.size();
  s.unique_urls = urls.size();
  s.unique_domains = domains.size();
  s.total_visits = ds.visits.size();
  return s;
}

}  // namespace polarlens

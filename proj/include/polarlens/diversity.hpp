/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "polarlens/entropy.hpp"
#include "polarlens/records.hpp"
#include "polarlens/stance.hpp"

namespace polarlens {

struct DomainDiversityOptions {
  Tier tier = Tier::High;
  std::size_t min_labeled_urls = 1;
};

// Label entropy per registered domain over the labels of its distinct
// labeled URLs (k=3 at the high tier, 6 expanded). Bare-domain label
// entries count as one observation for their domain; OffTopic and
// NotAccessible entries are ignored. Output sorted by domain.
std::vector<EntropyStat> domain_diversity(const LabelMap& labels,
                                          const DomainDiversityOptions& opts = {});
std::vector<EntropyStat> domain_diversity(const Dataset& ds,
                                          const DomainDiversityOptions& opts = {});

struct PropagationConfig {
  double entropy_threshold = 0.5;
  std::vector<std::string> forum_domains;
  // Curated advocacy-group domains and their stances.
  std::unordered_map<std::string, ExpandedLabel> advocacy_domains;
};

// Rolls URL labels up to domain labels where a domain's stance is clear:
// advocacy domains take their curated stance; forum domains take the
// dominant expanded category of their labeled URLs; any other domain
// whose high-tier normalized entropy is below the threshold takes the
// dominant high-level group, then the dominant expanded category inside
// it. A tie at any stage leaves the domain unclassified and its URL
// labels untouched. Classified domains get a bare-domain map entry and
// all their URL entries relabeled, which makes a second run a no-op.
// `stats` must be high-tier domain_diversity output for this map.
LabelMap propagate_domain_labels(const LabelMap& labels,
                                 const std::vector<EntropyStat>& stats,
                                 const PropagationConfig& cfg);

struct UserDiversityOptions {
  std::size_t min_domains = 3;
  Tier tier = Tier::High;
  bool weight_by_visits = false;  // weight domain labels by visit counts
};

// Label entropy per user over the labels of the distinct labeled domains
// they visited. A domain's label comes from its bare-domain map entry
// when present, otherwise from the dominant high-level label of the
// user's labeled URLs in it (a tie skips the domain). Users with fewer
// than min_domains labeled domains are omitted. Output sorted by user.
std::vector<EntropyStat> user_diversity(const Dataset& ds,
                                        const UserDiversityOptions& opts = {});

struct DiversityChange {
  std::string user_id;
  double h_before = 0.0;  // normalized
  double h_after = 0.0;
  double delta = 0.0;     // h_after - h_before, in [-1, 1]
};

struct DiversityChangeOptions {
  std::size_t min_domains_each = 2;
  Tier tier = Tier::High;
  std::unordered_set<std::string> exclude_urls;  // normalized
};

struct DiversityChangeReport {
  std::vector<DiversityChange> per_user;  // sorted by user
  std::size_t n_users = 0;
  double mean_delta = 0.0;
  double pct_unchanged = 0.0;   // |delta| < 1e-12, percent of users
  double pct_increased = 0.0;
  double pct_decreased = 0.0;
  double mean_increase = 0.0;   // mean delta among increased users
  double mean_decrease = 0.0;   // mean delta among decreased users
};

// Per-user before/after entropy deltas over users qualifying in both
// periods, with visits to excluded URLs dropped first.
DiversityChangeReport diversity_change(const Dataset& before,
                                       const Dataset& after,
                                       const DiversityChangeOptions& opts = {});

}  // namespace polarlens

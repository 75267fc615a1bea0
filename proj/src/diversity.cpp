/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/diversity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>

#include "polarlens/url.hpp"

namespace polarlens {

namespace {

constexpr double kUnchangedEps = 1e-12;

// Dominant value of a small count array; nullopt on a tie for first.
std::optional<std::size_t> dominant_index(std::span<const std::size_t> counts) {
  std::size_t best = 0;
  std::size_t best_count = 0;
  bool tie = false;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > best_count) {
      best = i;
      best_count = counts[i];
      tie = false;
    } else if (counts[i] == best_count && counts[i] > 0) {
      tie = true;
    }
  }
  if (best_count == 0 || tie) return std::nullopt;
  return best;
}

struct DomainEntries {
  std::vector<std::pair<const std::string*, ExpandedLabel>> stance_urls;
  bool has_bare_entry = false;
};

std::map<std::string, DomainEntries> group_by_domain(const LabelMap& labels) {
  std::map<std::string, DomainEntries> by_domain;
  for (const auto& [key, label] : labels) {
    std::string domain = registered_domain(key);
    DomainEntries& e = by_domain[domain];
    if (key == domain) e.has_bare_entry = true;
    if (is_stance(label)) e.stance_urls.push_back({&key, label});
  }
  return by_domain;
}

}  // namespace

std::vector<EntropyStat> domain_diversity(const LabelMap& labels,
                                          const DomainDiversityOptions& opts) {
  StateOrdering ordering{opts.tier};
  std::vector<EntropyStat> out;
  for (const auto& [domain, entries] : group_by_domain(labels)) {
    if (entries.stance_urls.empty() ||
        entries.stance_urls.size() < opts.min_labeled_urls) {
      continue;
    }
    std::vector<std::size_t> counts(ordering.size(), 0);
    for (const auto& [_, label] : entries.stance_urls) {
      ++counts[ordering.index_of(label)];
    }
    out.push_back(normalized_entropy(counts, ordering.size(), domain));
  }
  return out;  // std::map iteration is already sorted by domain
}

std::vector<EntropyStat> domain_diversity(const Dataset& ds,
                                          const DomainDiversityOptions& opts) {
  return domain_diversity(ds.labels, opts);
}

LabelMap propagate_domain_labels(const LabelMap& labels,
                                 const std::vector<EntropyStat>& stats,
                                 const PropagationConfig& cfg) {
  std::map<std::string, double> entropy_of;
  for (const auto& s : stats) entropy_of[s.id] = s.normalized;
  std::unordered_set<std::string> forums(cfg.forum_domains.begin(),
                                         cfg.forum_domains.end());
  const StateOrdering high{Tier::High};
  const StateOrdering expanded{Tier::Expanded};

  auto by_domain = group_by_domain(labels);
  LabelMap out = labels;

  auto decide = [&](const std::string& domain,
                    const DomainEntries& entries) -> std::optional<ExpandedLabel> {
    if (auto it = cfg.advocacy_domains.find(domain);
        it != cfg.advocacy_domains.end()) {
      return it->second;
    }
    std::array<std::size_t, kExpandedStates> exp_counts{};
    for (const auto& [_, label] : entries.stance_urls) {
      ++exp_counts[expanded.index_of(label)];
    }
    if (forums.count(domain) != 0) {
      // Forums take their overall stance: the dominant expanded category.
      if (auto i = dominant_index(exp_counts)) {
        return ExpandedLabel(static_cast<unsigned char>(*i));
      }
      return std::nullopt;
    }
    auto eit = entropy_of.find(domain);
    if (eit == entropy_of.end() || eit->second >= cfg.entropy_threshold) {
      return std::nullopt;
    }
    // Dominant high-level group first, then the dominant expanded
    // category inside it; a tie at either stage leaves the domain alone.
    std::array<std::size_t, kHighStates> high_counts{};
    for (std::size_t i = 0; i < kExpandedStates; ++i) {
      std::size_t hi = high.index_of(fold(ExpandedLabel(static_cast<unsigned char>(i))));
      high_counts[hi] += exp_counts[i];
    }
    auto hwin = dominant_index(high_counts);
    if (!hwin) return std::nullopt;
    std::array<std::size_t, 2> member_counts{exp_counts[*hwin * 2],
                                             exp_counts[*hwin * 2 + 1]};
    auto mwin = dominant_index(member_counts);
    if (!mwin) return std::nullopt;
    return ExpandedLabel(static_cast<unsigned char>(*hwin * 2 + *mwin));
  };

  for (const auto& [domain, entries] : by_domain) {
    auto label = decide(domain, entries);
    if (!label) continue;
    out[domain] = *label;
    for (const auto& [url, _] : entries.stance_urls) {
      out[*url] = *label;
    }
  }
  // Curated advocacy domains are labeled even when no URL of theirs was
  // judged.
  for (const auto& [domain, label] : cfg.advocacy_domains) {
    out[domain] = label;
  }
  return out;
}

namespace {

struct UserDomainFacts {
  std::optional<ExpandedLabel> bare_label;
  std::map<ExpandedLabel, std::size_t> distinct_url_labels;
  std::size_t visits = 0;
};

// Tier-level state index of a domain for one user, or nullopt when the
// domain's label cannot be pinned down (tie, or nothing labeled).
std::optional<std::size_t> domain_state(const UserDomainFacts& facts,
                                        const StateOrdering& ordering) {
  if (facts.bare_label) {
    return ordering.index_of(*facts.bare_label);
  }
  std::vector<std::size_t> counts(ordering.size(), 0);
  for (const auto& [label, n] : facts.distinct_url_labels) {
    counts[ordering.index_of(label)] += n;
  }
  return dominant_index(counts);
}

}  // namespace

std::vector<EntropyStat> user_diversity(const Dataset& ds,
                                        const UserDiversityOptions& opts) {
  const StateOrdering ordering{opts.tier};

  // user -> domain -> facts, with distinct labeled URLs per domain.
  std::map<std::string, std::map<std::string, UserDomainFacts>> users;
  std::map<std::string, std::map<std::string, std::unordered_set<std::string>>>
      seen_urls;
  for (const auto& v : ds.visits) {
    std::string nu = normalize_url(v.url);
    std::string domain = registered_domain(nu);

    std::optional<ExpandedLabel> url_label;
    if (auto it = ds.labels.find(nu); it != ds.labels.end()) {
      url_label = it->second;
    }
    std::optional<ExpandedLabel> bare_label;
    if (auto it = ds.labels.find(domain); it != ds.labels.end()) {
      bare_label = it->second;
    }
    if (url_label && !is_stance(*url_label)) url_label.reset();
    if (bare_label && !is_stance(*bare_label)) bare_label.reset();
    if (!url_label && !bare_label) continue;

    UserDomainFacts& facts = users[v.user_id][domain];
    ++facts.visits;
    if (bare_label) facts.bare_label = *bare_label;
    if (url_label && seen_urls[v.user_id][domain].insert(nu).second) {
      ++facts.distinct_url_labels[*url_label];
    }
  }

  std::vector<EntropyStat> out;
  for (const auto& [user, domains] : users) {
    std::vector<std::size_t> counts(ordering.size(), 0);
    std::size_t n_domains = 0;
    for (const auto& [_, facts] : domains) {
      auto state = domain_state(facts, ordering);
      if (!state) continue;
      ++n_domains;
      counts[*state] += opts.weight_by_visits ? facts.visits : 1;
    }
    if (n_domains < opts.min_domains) continue;
    out.push_back(normalized_entropy(counts, ordering.size(), user));
  }
  return out;
}

DiversityChangeReport diversity_change(const Dataset& before,
                                       const Dataset& after,
                                       const DiversityChangeOptions& opts) {
  auto strip = [&](const Dataset& ds) {
    if (opts.exclude_urls.empty()) return ds;
    Dataset out;
    out.labels = ds.labels;
    out.queries = ds.queries;
    for (const auto& v : ds.visits) {
      if (opts.exclude_urls.count(normalize_url(v.url)) == 0) {
        out.visits.push_back(v);
      }
    }
    return out;
  };
  Dataset bf = strip(before);
  Dataset af = strip(after);

  UserDiversityOptions uopts;
  uopts.min_domains = opts.min_domains_each;
  uopts.tier = opts.tier;
  auto stats_before = user_diversity(bf, uopts);
  auto stats_after = user_diversity(af, uopts);
  std::map<std::string, double> h_after;
  for (const auto& s : stats_after) h_after[s.id] = s.normalized;

  DiversityChangeReport report;
  for (const auto& s : stats_before) {
    auto it = h_after.find(s.id);
    if (it == h_after.end()) continue;
    report.per_user.push_back(
        {s.id, s.normalized, it->second, it->second - s.normalized});
  }
  report.n_users = report.per_user.size();
  if (report.n_users == 0) return report;

  std::size_t up = 0;
  std::size_t down = 0;
  std::size_t flat = 0;
  double sum = 0.0;
  double sum_up = 0.0;
  double sum_down = 0.0;
  for (const auto& c : report.per_user) {
    sum += c.delta;
    if (std::fabs(c.delta) < kUnchangedEps) {
      ++flat;
    } else if (c.delta > 0) {
      ++up;
      sum_up += c.delta;
    } else {
      ++down;
      sum_down += c.delta;
    }
  }
  double n = static_cast<double>(report.n_users);
  report.mean_delta = sum / n;
  report.pct_unchanged = 100.0 * static_cast<double>(flat) / n;
  report.pct_increased = 100.0 * static_cast<double>(up) / n;
  report.pct_decreased = 100.0 * static_cast<double>(down) / n;
  report.mean_increase = up == 0 ? 0.0 : sum_up / static_cast<double>(up);
  report.mean_decrease = down == 0 ? 0.0 : sum_down / static_cast<double>(down);
  return report;
}

}  // namespace polarlens

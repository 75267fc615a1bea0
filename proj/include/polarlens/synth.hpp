/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polarlens/json.hpp"

#include "polarlens/records.hpp"
#include "polarlens/transition_matrix.hpp"

namespace polarlens {

// Ground-truth description of a synthetic browsing population. Domains
// are grouped into per-state pools; every pool needs at least two
// domains so consecutive visits never share a domain and the domain
// collapse in the estimator cannot swallow a planted transition.
struct SynthConfig {
  std::uint64_t seed = 1;
  std::size_t user_count = 100;
  double mean_sessions_per_user = 3.0;
  double mean_visits_per_session = 8.0;

  TransitionMatrix chain;  // sampled before event_time
  std::optional<TransitionMatrix> post_event_chain;

  // pools[state] lists the domains of that state; urls_per_domain pages
  // exist under each ("<domain>/p0" ...).
  std::vector<std::vector<std::string>> pools;
  std::size_t urls_per_domain = 5;

  std::int64_t time_start = 0;
  std::int64_t event_time = 0;  // <= time_start means everything is "after"
  std::int64_t time_end = 0;
  double post_event_rate_multiplier = 1.0;  // arrival-rate shock

  bool emit_queries = true;
  std::string query_phrase = "gun control";
  bool record_trails = true;

  // JSON file with the fields above; "chain"/"post_event_chain" are
  // row arrays (fractions or percentages), "tier" selects 3 or 6
  // states, pools default to "<state code><k>.example" names.
  static SynthConfig from_json_file(const std::filesystem::path& path);

  void validate() const;  // throws std::invalid_argument
};

// Everything the generator knows it emitted, derived from its own
// emission stream without URL parsing, label lookup, or sorting — an
// independent check on the analysis path.
struct SynthBookkeeping {
  std::size_t users = 0;
  std::size_t sessions = 0;
  std::size_t visits = 0;
  std::size_t unique_urls = 0;
  std::size_t unique_domains = 0;
  std::size_t visits_before = 0;
  std::size_t visits_after = 0;
  Tier tier = Tier::High;

  // Realized transition counts under the estimator's collapse
  // semantics; before/after count pairs whose endpoints fall in the
  // same period.
  std::vector<std::uint64_t> realized_overall;
  std::vector<std::uint64_t> realized_before;
  std::vector<std::uint64_t> realized_after;

  std::map<std::string, std::size_t> query_counts;
  std::map<std::string, std::vector<std::size_t>> trails;  // when recorded

  DatasetSummary expected_summary() const;
  Json to_json() const;
  static SynthBookkeeping from_json(const Json& j);
};

struct SynthOutput {
  Dataset dataset;
  SynthBookkeeping bookkeeping;
};

// Samples user trails from the configured chain. Identical config and
// seed give identical output, record for record.
SynthOutput generate_logs(const SynthConfig& cfg);

// TSV/CSV writers matching the loaders in logio.
void save_visit_tsv(const std::vector<LogRecord>& visits,
                    const std::filesystem::path& path);
void save_query_tsv(const std::vector<QueryRecord>& queries,
                    const std::filesystem::path& path);
void save_label_csv(const LabelMap& labels, const std::filesystem::path& path);

}  // namespace polarlens

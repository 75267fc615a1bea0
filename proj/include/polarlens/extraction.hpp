/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polarlens/query_graph.hpp"
#include "polarlens/records.hpp"
#include "polarlens/stance.hpp"

namespace polarlens {

struct AdvocacyEntry {
  std::string url;  // normalized on load
  ExpandedLabel label = ExpandedLabel::PurelyFactual;
};

// Knobs for the corpus-building pipeline: seed queries -> expanded
// relevant queries -> relevant URLs.
struct ExtractionConfig {
  std::vector<std::string> seed_phrases;
  std::vector<std::string> exclusion_terms;
  double similarity_threshold = 0.5;
  std::vector<std::string> stoplist;          // navigational queries
  std::vector<std::string> manual_removals;
  std::vector<AdvocacyEntry> advocacy;        // curated on-topic URLs
  std::vector<std::string> news_whitelist;    // registered domains
  // Domains (no '/') or normalized-URL prefixes (with '/') whose click
  // targets are dropped before expansion; defaults cover video hosts.
  std::vector<std::string> url_blocklist = {"youtube.com", "vimeo.com",
                                            "dailymotion.com", "metacafe.com",
                                            "liveleak.com"};
  UrlNormalizeOptions url_options;

  // Reads a JSON config; list fields are optional. "advocacy_csv" and
  // "news_whitelist_file" entries pull in the side files below.
  static ExtractionConfig from_json_file(const std::filesystem::path& path);

  void load_advocacy_csv(const std::filesystem::path& path);     // url,label
  void load_news_whitelist(const std::filesystem::path& path);   // domain/line
};

// Queries containing a seed phrase as a substring and no exclusion term
// as a token sequence. Query text is expected lowercased (loader does
// this). Errors if cfg.seed_phrases is empty.
std::set<std::string> find_seed_queries(std::span<const QueryRecord> queries,
                                        const ExtractionConfig& cfg);

// Two-step co-click expansion gated by trigram cosine: candidates
// reachable as seed -> clicked URL -> co-clicked query are retained when
// their best similarity against any seed is >= cfg.similarity_threshold.
// Seeds stay in the result; seeds missing from the graph are skipped
// (with a warning when `warnings` is given).
std::set<std::string> expand_queries(const QueryClickGraph& graph,
                                     const std::set<std::string>& seeds,
                                     const ExtractionConfig& cfg,
                                     std::vector<std::string>* warnings = nullptr);

// Drops exact stoplist and manual-removal members. Idempotent.
std::set<std::string> filter_queries(const std::set<std::string>& candidates,
                                     const ExtractionConfig& cfg);

// Relevant URL set: click targets of relevant queries (minus blocklisted
// ones), plus every visit URL extending a click target within the same
// host ("example.com/guns" covers "example.com/guns/article1"), plus the
// curated advocacy URLs; news-whitelisted domains removed last. All
// returned URLs are normalize_url fixpoints.
std::set<std::string> extract_relevant_urls(const Dataset& ds,
                                            const std::set<std::string>& relevant_queries,
                                            const ExtractionConfig& cfg);

// Relevant queries ranked by frequency in the given records, descending,
// ties broken lexicographically.
std::vector<std::pair<std::string, std::size_t>> rank_queries(
    std::span<const QueryRecord> queries, const std::set<std::string>& relevant);

}  // namespace polarlens

/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "polarlens/logio.hpp"
#include "polarlens/trigram.hpp"
#include "polarlens/url.hpp"

namespace polarlens {

namespace {

std::string lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::vector<std::string> tokens_of(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

// True when `term`'s tokens appear as a contiguous run in `tokens`.
bool contains_token_sequence(const std::vector<std::string>& tokens,
                             const std::vector<std::string>& term) {
  if (term.empty() || term.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + term.size() <= tokens.size(); ++i) {
    if (std::equal(term.begin(), term.end(), tokens.begin() + i)) return true;
  }
  return false;
}

}  // namespace

ExtractionConfig ExtractionConfig::from_json_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("extraction: cannot open config '" + path.string() + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("extraction: bad config '" + path.string() +
                     "': " + e.what());
  }

  ExtractionConfig cfg;
  auto read_list = [&](const char* key, std::vector<std::string>& out,
                       bool lowercase) {
    if (!j.contains(key)) return;
    out.clear();
    for (const auto& item : j.at(key)) {
      std::string s = item.get<std::string>();
      out.push_back(lowercase ? lower_copy(std::move(s)) : std::move(s));
    }
  };
  read_list("seed_phrases", cfg.seed_phrases, true);
  read_list("exclusion_terms", cfg.exclusion_terms, true);
  read_list("stoplist", cfg.stoplist, true);
  read_list("manual_removals", cfg.manual_removals, true);
  read_list("url_blocklist", cfg.url_blocklist, true);
  read_list("news_whitelist", cfg.news_whitelist, true);
  if (j.contains("similarity_threshold")) {
    cfg.similarity_threshold = j.at("similarity_threshold").get<double>();
  }
  if (cfg.similarity_threshold < 0.0 || cfg.similarity_threshold > 1.0) {
    throw ParseError("extraction: similarity_threshold must be in [0,1]");
  }
  if (j.contains("drop_param_keys")) {
    cfg.url_options.drop_param_keys.clear();
    for (const auto& item : j.at("drop_param_keys")) {
      cfg.url_options.drop_param_keys.push_back(
          lower_copy(item.get<std::string>()));
    }
  }
  if (j.contains("advocacy")) {
    for (const auto& item : j.at("advocacy")) {
      cfg.advocacy.push_back(
          {normalize_url(item.at("url").get<std::string>(), cfg.url_options),
           parse_label_code(item.at("label").get<std::string>())});
    }
  }
  auto sibling = [&](const std::string& rel) {
    std::filesystem::path p(rel);
    return p.is_absolute() ? p : path.parent_path() / p;
  };
  if (j.contains("advocacy_csv")) {
    cfg.load_advocacy_csv(sibling(j.at("advocacy_csv").get<std::string>()));
  }
  if (j.contains("news_whitelist_file")) {
    auto extra =
        load_domain_list(sibling(j.at("news_whitelist_file").get<std::string>()));
    cfg.news_whitelist.insert(cfg.news_whitelist.end(), extra.begin(),
                              extra.end());
  }
  return cfg;
}

void ExtractionConfig::load_advocacy_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("extraction: cannot open advocacy list '" +
                     path.string() + "'");
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw ParseError("extraction: " + path.filename().string() + ":" +
                       std::to_string(line_no) + ": expected 'url,label'");
    }
    if (line_no == 1 && lower_copy(fields[0]) == "url") continue;
    advocacy.push_back({normalize_url(fields[0], url_options),
                        parse_label_code(fields[1])});
  }
}

void ExtractionConfig::load_news_whitelist(const std::filesystem::path& path) {
  auto domains = load_domain_list(path);
  news_whitelist.insert(news_whitelist.end(), domains.begin(), domains.end());
}

std::set<std::string> find_seed_queries(std::span<const QueryRecord> queries,
                                        const ExtractionConfig& cfg) {
  if (cfg.seed_phrases.empty()) {
    throw std::invalid_argument("extraction: seed phrase list is empty");
  }
  std::vector<std::vector<std::string>> exclusion_tokens;
  exclusion_tokens.reserve(cfg.exclusion_terms.size());
  for (const auto& term : cfg.exclusion_terms) {
    exclusion_tokens.push_back(tokens_of(term));
  }

  std::set<std::string> seeds;
  for (const auto& q : queries) {
    bool anchored = std::any_of(
        cfg.seed_phrases.begin(), cfg.seed_phrases.end(),
        [&](const std::string& p) { return q.query.find(p) != std::string::npos; });
    if (!anchored) continue;
    auto tokens = tokens_of(q.query);
    bool excluded = std::any_of(exclusion_tokens.begin(), exclusion_tokens.end(),
                                [&](const std::vector<std::string>& term) {
                                  return contains_token_sequence(tokens, term);
                                });
    if (!excluded) seeds.insert(q.query);
  }
  return seeds;
}

std::set<std::string> expand_queries(const QueryClickGraph& graph,
                                     const std::set<std::string>& seeds,
                                     const ExtractionConfig& cfg,
                                     std::vector<std::string>* warnings) {
  std::set<std::string> present;
  for (const auto& seed : seeds) {
    if (graph.has_query(seed)) {
      present.insert(seed);
    } else if (warnings != nullptr) {
      warnings->push_back("extraction: seed query '" + seed +
                          "' has no clicks in the graph; skipped");
    }
  }

  std::set<std::string> result = seeds;
  for (const auto& candidate : graph.co_clicked(present)) {
    if (result.count(candidate) != 0) continue;
    double best = 0.0;
    for (const auto& seed : seeds) {
      best = std::max(best, trigram_cosine(candidate, seed));
      if (best >= cfg.similarity_threshold) break;
    }
    if (best >= cfg.similarity_threshold) result.insert(candidate);
  }
  return result;
}

std::set<std::string> filter_queries(const std::set<std::string>& candidates,
                                     const ExtractionConfig& cfg) {
  std::set<std::string> out = candidates;
  for (const auto& q : cfg.stoplist) out.erase(q);
  for (const auto& q : cfg.manual_removals) out.erase(q);
  return out;
}

namespace {

bool blocklisted(const std::string& url, const ExtractionConfig& cfg) {
  std::string domain = registered_domain(url);
  for (const auto& entry : cfg.url_blocklist) {
    if (entry.find('/') == std::string::npos) {
      if (domain == entry) return true;
    } else if (url.compare(0, entry.size(), entry) == 0) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::set<std::string> extract_relevant_urls(
    const Dataset& ds, const std::set<std::string>& relevant_queries,
    const ExtractionConfig& cfg) {
  if (relevant_queries.empty()) {
    throw std::invalid_argument("extraction: relevant query set is empty");
  }

  std::set<std::string> seed_urls;
  for (const auto& q : ds.queries) {
    if (q.clicked_url.empty() || relevant_queries.count(q.query) == 0) continue;
    std::string url = normalize_url(q.clicked_url, cfg.url_options);
    if (!blocklisted(url, cfg)) seed_urls.insert(std::move(url));
  }

  // Group click targets by host so the prefix scan only ever compares
  // same-host URLs.
  std::unordered_map<std::string, std::vector<const std::string*>> by_host;
  for (const auto& url : seed_urls) {
    by_host[host_of(url)].push_back(&url);
  }

  std::set<std::string> result = seed_urls;
  for (const auto& v : ds.visits) {
    std::string url = normalize_url(v.url, cfg.url_options);
    auto it = by_host.find(host_of(url));
    if (it == by_host.end()) continue;
    for (const std::string* seed : it->second) {
      if (url.size() >= seed->size() &&
          url.compare(0, seed->size(), *seed) == 0) {
        result.insert(std::move(url));
        break;
      }
    }
  }

  for (const auto& entry : cfg.advocacy) {
    result.insert(normalize_url(entry.url, cfg.url_options));
  }

  std::unordered_set<std::string> news(cfg.news_whitelist.begin(),
                                       cfg.news_whitelist.end());
  if (!news.empty()) {
    for (auto it = result.begin(); it != result.end();) {
      if (news.count(registered_domain(*it)) != 0) {
        it = result.erase(it);
      } else {
        ++it;
      }
    }
  }
  return result;
}

std::vector<std::pair<std::string, std::size_t>> rank_queries(
    std::span<const QueryRecord> queries, const std::set<std::string>& relevant) {
  std::map<std::string, std::size_t> freq;
  for (const auto& q : queries) {
    if (relevant.count(q.query) != 0) ++freq[q.query];
  }
  std::vector<std::pair<std::string, std::size_t>> out(freq.begin(), freq.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace polarlens

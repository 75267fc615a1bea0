/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/extraction.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "polarlens/logio.hpp"
#include "polarlens/url.hpp"
#include "test_util.hpp"

using namespace polarlens;
using polarlens::testing::fixture;
using polarlens::testing::TempDir;

namespace {

Dataset load_fixture_dataset() {
  auto visits_path = fixture("visits.tsv");
  auto queries_path = fixture("queries.tsv");
  auto labels_path = fixture("labels.csv");
  return load_dataset(visits_path, &queries_path, &labels_path, nullptr);
}

ExtractionConfig fixture_config() {
  return ExtractionConfig::from_json_file(fixture("extract_config.json"));
}

}  // namespace

TEST_SUITE("extraction") {

TEST_CASE("config loads lists, thresholds, and curated URLs") {
  auto cfg = fixture_config();
  CHECK(cfg.seed_phrases ==
        std::vector<std::string>{"gun control", "gun rights"});
  CHECK(cfg.similarity_threshold == 0.5);
  CHECK(cfg.stoplist == std::vector<std::string>{"facebook login", "maps"});
  REQUIRE(cfg.advocacy.size() == 2);
  CHECK(cfg.advocacy[0].url == "nra.example");
  CHECK(cfg.advocacy[0].label == ExpandedLabel::ExtremeRights);
  CHECK(cfg.advocacy[1].url == "bradycampaign.example");
  CHECK(cfg.advocacy[1].label == ExpandedLabel::ExtremeControl);
  CHECK(cfg.news_whitelist ==
        std::vector<std::string>{"cnn.com", "nytimes.com"});
  // Default blocklist stands when the config does not override it.
  CHECK(cfg.url_blocklist.front() == "youtube.com");
}

TEST_CASE("config rejects an out-of-range similarity threshold") {
  TempDir tmp;
  auto p = tmp.write("bad.json",
                     "{\"seed_phrases\": [\"x\"], \"similarity_threshold\": 1.5}\n");
  CHECK_THROWS_AS(ExtractionConfig::from_json_file(p), ParseError);
}

TEST_CASE("advocacy CSV side file appends normalized entries") {
  TempDir tmp;
  auto p = tmp.write("adv.csv",
                     "url,label\nhttp://www.crusade.example/act,EC\n");
  ExtractionConfig cfg;
  cfg.load_advocacy_csv(p);
  REQUIRE(cfg.advocacy.size() == 1);
  CHECK(cfg.advocacy[0].url == "crusade.example/act");
  CHECK(cfg.advocacy[0].label == ExpandedLabel::ExtremeControl);

  auto bad = tmp.write("adv_bad.csv", "http://a.example\n");
  CHECK_THROWS_AS(cfg.load_advocacy_csv(bad), ParseError);
}

TEST_CASE("seed queries anchor on phrases and honor token exclusions") {
  auto ds = load_fixture_dataset();
  auto cfg = fixture_config();
  auto seeds = find_seed_queries(ds.queries, cfg);
  CHECK(seeds == std::set<std::string>{"gun control", "gun control laws",
                                       "gun rights"});

  // "gun controller" appears as a token sequence only in the excluded
  // query; a substring hit inside one token must not exclude.
  std::vector<QueryRecord> probe = {
      {"u", "s", "stop gun controller lobby", "", 1},
      {"u", "s", "gun controls", "", 2}};
  auto probe_seeds = find_seed_queries(probe, cfg);
  CHECK(probe_seeds == std::set<std::string>{"gun controls"});

  ExtractionConfig empty;
  CHECK_THROWS_AS(find_seed_queries(ds.queries, empty), std::invalid_argument);
}

TEST_CASE("expansion keeps seeds and gates candidates by similarity") {
  auto ds = load_fixture_dataset();
  auto cfg = fixture_config();
  auto graph = QueryClickGraph::build(ds.queries, cfg.url_options);
  auto seeds = find_seed_queries(ds.queries, cfg);

  auto expanded = expand_queries(graph, seeds, cfg);
  // "second amendment" is co-clicked with "gun rights" but fails the
  // trigram gate at 0.5; nothing else is reachable.
  CHECK(expanded == seeds);

  for (const auto& s : seeds) CHECK(expanded.count(s) == 1);

  // Dropping the gate admits the co-clicked candidate.
  ExtractionConfig open = cfg;
  open.similarity_threshold = 0.0;
  auto wide = expand_queries(graph, seeds, open);
  CHECK(wide.count("second amendment") == 1);

  // Raising the threshold can only shrink the result.
  for (double t : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    ExtractionConfig at = cfg;
    at.similarity_threshold = t;
    auto lo = expand_queries(graph, seeds, at);
    at.similarity_threshold = std::min(1.0, t + 0.2);
    auto hi = expand_queries(graph, seeds, at);
    for (const auto& q : hi) CHECK(lo.count(q) == 1);
  }
}

TEST_CASE("expansion warns about seeds that never produced a click") {
  auto ds = load_fixture_dataset();
  auto cfg = fixture_config();
  auto graph = QueryClickGraph::build(ds.queries, cfg.url_options);
  std::set<std::string> seeds = {"gun control", "gun lobby explained"};
  std::vector<std::string> warnings;
  auto expanded = expand_queries(graph, seeds, cfg, &warnings);
  CHECK(expanded.count("gun lobby explained") == 1);  // seeds always kept
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("gun lobby explained") != std::string::npos);
}

TEST_CASE("stoplist filter is idempotent") {
  auto cfg = fixture_config();
  std::set<std::string> cands = {"gun control", "facebook login", "maps",
                                 "gun rights"};
  auto once = filter_queries(cands, cfg);
  CHECK(once == std::set<std::string>{"gun control", "gun rights"});
  CHECK(filter_queries(once, cfg) == once);
}

TEST_CASE("relevant URLs cover click targets, same-host extensions, and curated sites") {
  auto ds = load_fixture_dataset();
  auto cfg = fixture_config();
  auto graph = QueryClickGraph::build(ds.queries, cfg.url_options);
  auto relevant =
      filter_queries(expand_queries(graph, find_seed_queries(ds.queries, cfg),
                                    cfg),
                     cfg);

  auto urls = extract_relevant_urls(ds, relevant, cfg);
  std::set<std::string> expected = {
      "bradycampaign.example",        "controlsite.example/a",
      "controlsite.example/a2",       "extremerights.example/e",
      "extremerights.example/e2",     "nra.example",
      "rightsite.example/r1",         "rightsite.example/r3"};
  CHECK(urls == expected);

  // The whitelisted news click target is gone despite being clicked.
  CHECK(urls.count("cnn.com/news/gun-control") == 0);
  // Same-host but not an extension of any click target.
  CHECK(urls.count("rightsite.example/r2") == 0);
  CHECK(urls.count("controlsite.example/c2") == 0);

  for (const auto& u : urls) CHECK(normalize_url(u) == u);

  CHECK_THROWS_AS(extract_relevant_urls(ds, {}, cfg), std::invalid_argument);
}

TEST_CASE("video-host click targets are blocklisted") {
  ExtractionConfig cfg;
  cfg.seed_phrases = {"gun"};
  Dataset ds;
  ds.queries = {{"u", "s", "gun", "http://www.youtube.com/watch?v=abc", 1},
                {"u", "s", "gun", "http://pro.example/page", 2}};
  auto urls = extract_relevant_urls(ds, {"gun"}, cfg);
  CHECK(urls == std::set<std::string>{"pro.example/page"});
}

TEST_CASE("ranking counts record frequency with deterministic ties") {
  auto ds = load_fixture_dataset();
  std::set<std::string> relevant = {"gun control", "gun control laws",
                                    "gun rights"};
  auto ranked = rank_queries(ds.queries, relevant);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0] == std::pair<std::string, std::size_t>{"gun control", 3});
  CHECK(ranked[1] == std::pair<std::string, std::size_t>{"gun rights", 2});
  CHECK(ranked[2] ==
        std::pair<std::string, std::size_t>{"gun control laws", 1});

  // Ties break lexicographically.
  std::vector<QueryRecord> recs = {{"u", "s", "bb", "", 1},
                                   {"u", "s", "aa", "", 2}};
  auto tied = rank_queries(recs, {"aa", "bb"});
  REQUIRE(tied.size() == 2);
  CHECK(tied[0].first == "aa");
  CHECK(tied[1].first == "bb");
}

}  // TEST_SUITE

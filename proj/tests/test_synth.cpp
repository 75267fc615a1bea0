/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/synth.hpp"

#include <string>
#include <vector>

#include <doctest.h>

#include "polarlens/logio.hpp"
#include "test_util.hpp"

using namespace polarlens;
using polarlens::testing::fixture;
using polarlens::testing::slurp;
using polarlens::testing::TempDir;

namespace {

SynthConfig small_config() {
  return SynthConfig::from_json_file(fixture("synth_small.json"));
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("config loads chains, defaults, and per-state pools") {
  auto cfg = small_config();
  CHECK(cfg.seed == 7);
  CHECK(cfg.user_count == 40);
  CHECK(cfg.chain.tier() == Tier::High);
  CHECK(cfg.chain.p(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cfg.chain.p(2, 2) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK_FALSE(cfg.post_event_chain.has_value());
  REQUIRE(cfg.pools.size() == 3);
  CHECK(cfg.pools[0] ==
        std::vector<std::string>{"gc0.example", "gc1.example", "gc2.example"});
  CHECK(cfg.pools[2][0] == "gr0.example");
  CHECK(cfg.urls_per_domain == 4);
  CHECK(cfg.emit_queries);
  CHECK(cfg.query_phrase == "gun control");
}

TEST_CASE("validation rejects broken configurations") {
  auto cfg = small_config();
  CHECK_NOTHROW(cfg.validate());

  auto bad = cfg;
  bad.user_count = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.pools.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.pools[0] = {"only.example"};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.pools[1][0] = bad.pools[0][0];  // same domain in two pools
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.pools[0][0] = "http://gc0.example/page";  // not a bare domain
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.time_end = bad.time_start;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.mean_visits_per_session = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("identical seeds give identical output, record for record") {
  auto cfg = small_config();
  auto a = generate_logs(cfg);
  auto b = generate_logs(cfg);
  REQUIRE(a.dataset.visits.size() == b.dataset.visits.size());
  for (std::size_t i = 0; i < a.dataset.visits.size(); ++i) {
    CHECK(a.dataset.visits[i].user_id == b.dataset.visits[i].user_id);
    CHECK(a.dataset.visits[i].session_id == b.dataset.visits[i].session_id);
    CHECK(a.dataset.visits[i].url == b.dataset.visits[i].url);
    CHECK(a.dataset.visits[i].timestamp == b.dataset.visits[i].timestamp);
  }
  REQUIRE(a.dataset.queries.size() == b.dataset.queries.size());
  CHECK(a.bookkeeping.to_json() == b.bookkeeping.to_json());

  auto cfg2 = cfg;
  cfg2.seed = 8;
  auto c = generate_logs(cfg2);
  bool same = a.dataset.visits.size() == c.dataset.visits.size();
  if (same) {
    for (std::size_t i = 0; i < a.dataset.visits.size(); ++i) {
      if (a.dataset.visits[i].url != c.dataset.visits[i].url) same = false;
    }
  }
  CHECK_FALSE(same);
}

TEST_CASE("bookkeeping matches the analysis-side summary exactly") {
  auto out = generate_logs(small_config());
  CHECK(summarize(out.dataset) == out.bookkeeping.expected_summary());
  CHECK(out.bookkeeping.users == 40);
  CHECK(out.bookkeeping.visits ==
        out.bookkeeping.visits_before + out.bookkeeping.visits_after);
  CHECK(out.bookkeeping.visits > 0);
}

TEST_CASE("estimated transition counts equal the planted emissions") {
  auto out = generate_logs(small_config());
  auto m = build_transition_matrix(out.dataset, Tier::High);
  const std::size_t n = m.n();
  std::uint64_t planted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(m.count(i, j) == out.bookkeeping.realized_overall[i * n + j]);
      planted += out.bookkeeping.realized_overall[i * n + j];
    }
  }
  CHECK(m.total_transitions() == planted);

  // Period-restricted estimates line up with the same-period pair counts.
  auto [before, after] = split_by_event(out.dataset, 1600000);
  auto mb = build_transition_matrix(before, Tier::High);
  auto ma = build_transition_matrix(after, Tier::High);
  for (std::size_t i = 0; i < n * n; ++i) {
    CHECK(mb.count(i / n, i % n) == out.bookkeeping.realized_before[i]);
    CHECK(ma.count(i / n, i % n) == out.bookkeeping.realized_after[i]);
  }
}

TEST_CASE("recorded trails equal the estimator's collapsed trails") {
  auto out = generate_logs(small_config());
  REQUIRE_FALSE(out.bookkeeping.trails.empty());
  auto trails = build_trails(out.dataset, Tier::High);
  REQUIRE(trails.size() == out.bookkeeping.trails.size());
  std::size_t i = 0;
  for (const auto& [user, expected] : out.bookkeeping.trails) {
    CHECK(trails[i].first == user);
    CHECK(trails[i].second == expected);
    ++i;
  }
}

TEST_CASE("queries always carry the seed phrase and a pool-domain click") {
  auto cfg = small_config();
  auto out = generate_logs(cfg);
  REQUIRE_FALSE(out.dataset.queries.empty());
  for (const auto& q : out.dataset.queries) {
    CHECK(q.query.find(cfg.query_phrase) != std::string::npos);
    CHECK(q.clicked_url.rfind("http://", 0) == 0);
  }
  std::size_t counted = 0;
  for (const auto& [text, count] : out.bookkeeping.query_counts) {
    CHECK(text.find(cfg.query_phrase) != std::string::npos);
    counted += count;
  }
  CHECK(counted == out.dataset.queries.size());

  auto quiet = cfg;
  quiet.emit_queries = false;
  CHECK(generate_logs(quiet).dataset.queries.empty());
}

TEST_CASE("bookkeeping JSON round-trips") {
  auto out = generate_logs(small_config());
  auto j = out.bookkeeping.to_json();
  auto back = SynthBookkeeping::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.users == out.bookkeeping.users);
  CHECK(back.realized_overall == out.bookkeeping.realized_overall);
  CHECK(back.trails == out.bookkeeping.trails);
}

TEST_CASE("writers emit files the loaders accept verbatim") {
  TempDir tmp;
  auto out = generate_logs(small_config());
  save_visit_tsv(out.dataset.visits, tmp.file("visits.tsv"));
  save_query_tsv(out.dataset.queries, tmp.file("queries.tsv"));
  save_label_csv(out.dataset.labels, tmp.file("labels.csv"));

  auto visits = load_visit_tsv(tmp.file("visits.tsv"));
  REQUIRE(visits.size() == out.dataset.visits.size());
  CHECK(visits.front().url == out.dataset.visits.front().url);
  auto queries = load_query_tsv(tmp.file("queries.tsv"));
  CHECK(queries.size() == out.dataset.queries.size());
  auto labels = load_label_csv(tmp.file("labels.csv"));
  CHECK(labels.size() == out.dataset.labels.size());
  for (const auto& [url, label] : out.dataset.labels) {
    REQUIRE(labels.count(url) == 1);
    CHECK(labels.at(url) == label);
  }
}

TEST_CASE("post-event chain switches the sampled dynamics") {
  auto cfg = small_config();
  // Park almost everything in the first state before the event and in
  // the last state after it.
  std::vector<double> sticky_first = {0.98, 0.01, 0.01,
                                      0.98, 0.01, 0.01,
                                      0.98, 0.01, 0.01};
  std::vector<double> sticky_last = {0.01, 0.01, 0.98,
                                     0.01, 0.01, 0.98,
                                     0.01, 0.01, 0.98};
  cfg.chain = TransitionMatrix::from_probabilities(Tier::High, sticky_first);
  cfg.post_event_chain =
      TransitionMatrix::from_probabilities(Tier::High, sticky_last);
  cfg.user_count = 200;
  auto out = generate_logs(cfg);

  const std::size_t n = 3;
  auto mass_into = [&](const std::vector<std::uint64_t>& counts,
                       std::size_t target) {
    std::uint64_t into = 0;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        total += counts[i * n + j];
        if (j == target) into += counts[i * n + j];
      }
    }
    return static_cast<double>(into) / static_cast<double>(total);
  };
  CHECK(mass_into(out.bookkeeping.realized_before, 0) > 0.9);
  CHECK(mass_into(out.bookkeeping.realized_after, 2) > 0.9);
}

}  // TEST_SUITE

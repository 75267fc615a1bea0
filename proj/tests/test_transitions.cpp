/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/transition_matrix.hpp"

#include <cstdlib>
#include <string>
#include <vector>

#include <doctest.h>

#include "polarlens/logio.hpp"
#include "polarlens/threading.hpp"
#include "test_util.hpp"

using namespace polarlens;
using polarlens::testing::fixture;
using polarlens::testing::TempDir;

namespace {

Dataset load_fixture_dataset() {
  auto visits_path = fixture("visits.tsv");
  auto labels_path = fixture("labels.csv");
  return load_dataset(visits_path, nullptr, &labels_path, nullptr);
}

LogRecord visit(const char* user, const char* session, const char* url,
                std::int64_t ts) {
  return {user, session, url, ts};
}

std::uint64_t count_of(const TransitionMatrix& m, const char* from,
                       const char* to) {
  const auto& ord = m.ordering();
  std::size_t i = 0;
  std::size_t j = 0;
  for (std::size_t k = 0; k < m.n(); ++k) {
    if (ord.code_at(k) == from) i = k;
    if (ord.code_at(k) == to) j = k;
  }
  return m.count(i, j);
}

}  // namespace

TEST_SUITE("transitions") {

TEST_CASE("counts derive row-stochastic probabilities") {
  std::vector<std::uint64_t> counts = {2, 1, 1, 0, 0, 0, 4, 0, 4};
  auto m = TransitionMatrix::from_counts(Tier::High, counts);
  CHECK(m.n() == 3);
  CHECK(m.p(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.p(0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.row_empty(1));
  CHECK(m.has_empty_rows());
  CHECK(m.p(1, 0) == 0.0);
  CHECK(m.p(2, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.total_transitions() == 12);
  CHECK(m.has_counts());

  for (std::size_t i = 0; i < m.n(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.n(); ++j) row += m.p(i, j);
    if (!m.row_empty(i)) CHECK(row == doctest::Approx(1.0).epsilon(1e-9));
  }

  CHECK_THROWS_AS(TransitionMatrix::from_counts(Tier::High, {1, 2, 3}),
                  std::invalid_argument);
}

TEST_CASE("probability input is validated") {
  std::vector<double> good = {0.5, 0.25, 0.25, 0.0, 0.0, 0.0, 0.1, 0.2, 0.7};
  auto m = TransitionMatrix::from_probabilities(Tier::High, good);
  CHECK(m.row_empty(1));
  CHECK_FALSE(m.has_counts());
  CHECK(m.total_transitions() == 0);

  std::vector<double> off = {0.5, 0.25, 0.24, 0, 0, 1, 0, 0, 1};
  CHECK_THROWS_AS(TransitionMatrix::from_probabilities(Tier::High, off),
                  std::invalid_argument);
  std::vector<double> neg = {-0.1, 0.6, 0.5, 0, 0, 1, 0, 0, 1};
  CHECK_THROWS_AS(TransitionMatrix::from_probabilities(Tier::High, neg),
                  std::invalid_argument);
  std::vector<double> short_vec = {1.0};
  CHECK_THROWS_AS(TransitionMatrix::from_probabilities(Tier::High, short_vec),
                  std::invalid_argument);
}

TEST_CASE("identity is immobile at both tiers") {
  for (auto tier : {Tier::High, Tier::Expanded}) {
    auto q = TransitionMatrix::identity(tier);
    for (std::size_t i = 0; i < q.n(); ++i) {
      CHECK(q.p(i, i) == 1.0);
      CHECK_FALSE(q.row_empty(i));
    }
  }
}

TEST_CASE("CSV loader accepts percent tables with labels and headers") {
  auto m = TransitionMatrix::from_csv_file(fixture("all_users_high.csv"));
  CHECK(m.tier() == Tier::High);
  CHECK(m.p(0, 0) == doctest::Approx(0.2842).epsilon(1e-3));
  CHECK(m.p(2, 2) == doctest::Approx(0.6671).epsilon(1e-3));
  for (std::size_t i = 0; i < m.n(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.n(); ++j) row += m.p(i, j);
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));  // renormalized
  }

  auto e = TransitionMatrix::from_csv_file(fixture("all_users_expanded.csv"));
  CHECK(e.tier() == Tier::Expanded);
  CHECK(e.n() == 6);
}

TEST_CASE("CSV loader handles fractions, percent signs, and bad shapes") {
  TempDir tmp;
  auto frac = tmp.write("frac.csv",
                        "0.50,0.30,0.20\n0.10,0.50,0.40\n0.05,0.25,0.70\n");
  auto mf = TransitionMatrix::from_csv_file(frac);
  CHECK(mf.p(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mf.p(2, 1) == doctest::Approx(0.25).epsilon(1e-12));

  auto pct = tmp.write("pct.csv",
                       "state,GC,BF,GR\nGC,50%,30%,20%\nBF, 10 ,50,40\n"
                       "GR,5,25,70\n");
  auto mp = TransitionMatrix::from_csv_file(pct);
  CHECK(mp.p(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mp.p(1, 0) == doctest::Approx(0.1).epsilon(1e-12));

  // Two rows make a 2-state matrix, which no tier accepts.
  auto wide = tmp.write("wide.csv", "50,30,20\n10,50,40\n");
  CHECK_THROWS_AS(TransitionMatrix::from_csv_file(wide), std::invalid_argument);
  auto ragged = tmp.write("ragged.csv", "50,30,20\n10,90\n5,25,70\n");
  CHECK_THROWS_AS(TransitionMatrix::from_csv_file(ragged), ParseError);
  auto scale = tmp.write("scale.csv", "5,3,2\n1,5,4\n1,2,7\n");
  CHECK_THROWS_AS(TransitionMatrix::from_csv_file(scale), ParseError);
  auto neg = tmp.write("neg.csv", "110,-5,-5\n10,50,40\n5,25,70\n");
  CHECK_THROWS_AS(TransitionMatrix::from_csv_file(neg), ParseError);
  auto empty = tmp.write("empty.csv", "\n");
  CHECK_THROWS_AS(TransitionMatrix::from_csv_file(empty), ParseError);
  auto word = tmp.write("word.csv", "50,30,20\n10,fifty,40\n5,25,70\n");
  CHECK_THROWS_AS(TransitionMatrix::from_csv_file(word), ParseError);
}

TEST_CASE("JSON round-trip keeps counts, probabilities, and flags") {
  std::vector<std::uint64_t> counts = {0, 3, 2, 1, 0, 3, 1, 2, 2};
  auto m = TransitionMatrix::from_counts(Tier::High, counts);
  auto back = TransitionMatrix::from_json(m.to_json());
  CHECK(back.tier() == m.tier());
  CHECK(back.total_transitions() == m.total_transitions());
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) {
      CHECK(back.count(i, j) == m.count(i, j));
      CHECK(back.p(i, j) == doctest::Approx(m.p(i, j)).epsilon(1e-15));
    }
  }

  auto probs_only =
      TransitionMatrix::from_probabilities(Tier::High, {0, 1, 0, 0, 0, 0, 0, 0, 1});
  auto back2 = TransitionMatrix::from_json(probs_only.to_json());
  CHECK_FALSE(back2.has_counts());
  CHECK(back2.row_empty(1));
  CHECK(back2.p(0, 1) == 1.0);

  auto j = m.to_json();
  j["ordering"][0] = "BF";
  CHECK_THROWS_AS(TransitionMatrix::from_json(j), std::invalid_argument);
}

TEST_CASE("fixture corpus yields the hand-counted high-tier matrix") {
  auto ds = load_fixture_dataset();
  auto m = build_transition_matrix(ds, Tier::High);
  CHECK(m.total_transitions() == 14);
  CHECK(count_of(m, "GC", "GC") == 0);
  CHECK(count_of(m, "GC", "BF") == 3);
  CHECK(count_of(m, "GC", "GR") == 2);
  CHECK(count_of(m, "BF", "GC") == 1);
  CHECK(count_of(m, "BF", "BF") == 0);
  CHECK(count_of(m, "BF", "GR") == 3);
  CHECK(count_of(m, "GR", "GC") == 1);
  CHECK(count_of(m, "GR", "BF") == 2);
  CHECK(count_of(m, "GR", "GR") == 2);
}

TEST_CASE("fixture corpus at the expanded tier") {
  auto ds = load_fixture_dataset();
  auto m = build_transition_matrix(ds, Tier::Expanded);
  CHECK(m.n() == 6);
  CHECK(m.total_transitions() == 14);
  CHECK(count_of(m, "EC", "HB") == 2);
  CHECK(count_of(m, "MR", "ER") == 1);
  CHECK(count_of(m, "PF", "MR") == 1);
  CHECK(count_of(m, "PF", "ER") == 1);
  CHECK(count_of(m, "MC", "ER") == 1);
}

TEST_CASE("session boundaries only split trails on request") {
  auto ds = load_fixture_dataset();
  TrailOptions per_session;
  per_session.per_session = true;
  auto m = build_transition_matrix(ds, Tier::High, per_session);
  // u1's cross-session rights-to-rights hop is the only lost transition.
  CHECK(m.total_transitions() == 13);
  CHECK(count_of(m, "GR", "GR") == 1);
  CHECK(count_of(m, "GC", "BF") == 3);
}

TEST_CASE("user filter restricts the counted trails") {
  auto ds = load_fixture_dataset();
  TrailOptions only_u3;
  only_u3.user_filter = std::set<std::string>{"u3"};
  auto m = build_transition_matrix(ds, Tier::High, only_u3);
  CHECK(m.total_transitions() == 1);
  CHECK(count_of(m, "GC", "BF") == 1);
}

TEST_CASE("off-topic and unlabeled visits drop before collapsing") {
  Dataset ds;
  ds.labels = {{"left.example", ExpandedLabel::ExtremeControl},
               {"right.example", ExpandedLabel::ModerateRights},
               {"noise.example", ExpandedLabel::OffTopic}};
  // left -> noise -> left collapses into one entry once noise is gone.
  ds.visits = {visit("u", "s", "http://left.example/1", 1),
               visit("u", "s", "http://noise.example/x", 2),
               visit("u", "s", "http://left.example/2", 3),
               visit("u", "s", "http://right.example/1", 4)};
  auto m = build_transition_matrix(ds, Tier::High);
  CHECK(m.total_transitions() == 1);
  CHECK(count_of(m, "GC", "GR") == 1);

  // An unlabeled page between two stances does not break the pair.
  Dataset ds2;
  ds2.labels = ds.labels;
  ds2.visits = {visit("u", "s", "http://left.example/1", 1),
                visit("u", "s", "http://nolabel.example/x", 2),
                visit("u", "s", "http://right.example/1", 3)};
  auto m2 = build_transition_matrix(ds2, Tier::High);
  CHECK(count_of(m2, "GC", "GR") == 1);
}

TEST_CASE("same-domain visits collapse to the first label") {
  Dataset ds;
  ds.labels = {{"mixed.example/one", ExpandedLabel::ExtremeControl},
               {"mixed.example/two", ExpandedLabel::ExtremeRights},
               {"right.example", ExpandedLabel::ModerateRights}};
  ds.visits = {visit("u", "s", "http://mixed.example/one", 1),
               visit("u", "s", "http://mixed.example/two", 2),
               visit("u", "s", "http://right.example/1", 3)};
  auto m = build_transition_matrix(ds, Tier::Expanded);
  CHECK(m.total_transitions() == 1);
  CHECK(count_of(m, "EC", "MR") == 1);
  CHECK(count_of(m, "ER", "MR") == 0);

  // Two pages of one domain alone yield no transition at all.
  Dataset lone;
  lone.labels = ds.labels;
  lone.visits = {visit("u", "s", "http://mixed.example/one", 1),
                 visit("u", "s", "http://mixed.example/two", 2)};
  CHECK_THROWS_AS(build_transition_matrix(lone, Tier::Expanded),
                  std::invalid_argument);
}

TEST_CASE("equal timestamps keep input order") {
  Dataset ds;
  ds.labels = {{"a.example", ExpandedLabel::ExtremeControl},
               {"b.example", ExpandedLabel::ModerateRights},
               {"c.example", ExpandedLabel::HighlyBalanced}};
  ds.visits = {visit("u", "s", "http://a.example/1", 100),
               visit("u", "s", "http://b.example/1", 100),
               visit("u", "s", "http://c.example/1", 200)};
  auto trails = build_trails(ds, Tier::High);
  REQUIRE(trails.size() == 1);
  CHECK(trails[0].first == "u");
  CHECK(trails[0].second == std::vector<std::size_t>{0, 2, 1});
}

TEST_CASE("trails list one entry per user, split by session on request") {
  auto ds = load_fixture_dataset();
  auto trails = build_trails(ds, Tier::High);
  REQUIRE(trails.size() == 3);
  CHECK(trails[0].first == "u1");
  CHECK(trails[0].second ==
        std::vector<std::size_t>{0, 1, 2, 2, 2, 0, 1, 2});
  CHECK(trails[1].first == "u2");
  CHECK(trails[1].second == std::vector<std::size_t>{0, 2, 1, 0, 2, 1, 2});
  CHECK(trails[2].first == "u3");
  CHECK(trails[2].second == std::vector<std::size_t>{0, 1});

  TrailOptions per_session;
  per_session.per_session = true;
  auto split = build_trails(ds, Tier::High, per_session);
  REQUIRE(split.size() == 5);
  CHECK(split[0].second == std::vector<std::size_t>{0, 1, 2, 2});
  CHECK(split[1].second == std::vector<std::size_t>{2, 0, 1, 2});
}

TEST_CASE("worker count does not change counted totals") {
  auto ds = load_fixture_dataset();
  auto base = build_transition_matrix(ds, Tier::High);

  ::setenv("POLARLENS_THREADS", "3", 1);
  CHECK(thread_budget() == 3);
  auto threaded = build_transition_matrix(ds, Tier::High);
  ::setenv("POLARLENS_THREADS", "1", 1);
  auto serial = build_transition_matrix(ds, Tier::High);
  ::unsetenv("POLARLENS_THREADS");

  for (std::size_t i = 0; i < base.n(); ++i) {
    for (std::size_t j = 0; j < base.n(); ++j) {
      CHECK(threaded.count(i, j) == base.count(i, j));
      CHECK(serial.count(i, j) == base.count(i, j));
    }
  }
}

}  // TEST_SUITE

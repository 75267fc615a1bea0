/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/trigram.hpp"

#include <string>
#include <vector>

#include <doctest.h>

using namespace polarlens;

TEST_SUITE("trigram") {

// Expected values computed with an independent sliding-window cosine
// (spaces included in the trigrams).
TEST_CASE("cosine matches the reference values") {
  CHECK(trigram_cosine("gun control", "gun control laws") ==
        doctest::Approx(0.8017837257372732).epsilon(1e-12));
  CHECK(trigram_cosine("gun control", "gun rights") ==
        doctest::Approx(0.2357022603955158).epsilon(1e-12));
  CHECK(trigram_cosine("gun control", "control gun") ==
        doctest::Approx(0.6666666666666666).epsilon(1e-12));
  CHECK(trigram_cosine("gun control debate", "gun control") ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(trigram_cosine("obama", "osama") ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(trigram_cosine("second amendment", "gun rights") == 0.0);
}

TEST_CASE("identical strings score 1, disjoint or short strings score 0") {
  CHECK(trigram_cosine("gun control", "gun control") ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trigram_cosine("gun", "gnu") == 0.0);
  CHECK(trigram_cosine("ab", "abc") == 0.0);
  CHECK(trigram_cosine("", "abc") == 0.0);
  CHECK(trigram_cosine("", "") == 0.0);
}

TEST_CASE("cosine is symmetric and bounded") {
  const std::vector<std::string> samples = {
      "gun control", "gun rights", "gun control laws", "second amendment",
      "aaaa", "aaab", "xyz xyz xyz", "firearms debate"};
  for (const auto& a : samples) {
    for (const auto& b : samples) {
      double ab = trigram_cosine(a, b);
      double ba = trigram_cosine(b, a);
      CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("repeated trigrams weigh by count, not presence") {
  // "aaaa" = {aaa x2}, "aaa" = {aaa x1}: cosine still 1 (parallel
  // vectors), while "aaab" mixes in a different trigram.
  CHECK(trigram_cosine("aaaa", "aaa") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trigram_cosine("aaaa", "aaab") < 1.0);
  CHECK(trigram_cosine("aaaa", "aaab") > 0.0);
}

}  // TEST_SUITE

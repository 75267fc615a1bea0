/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "polarlens/records.hpp"
#include "polarlens/stance.hpp"

namespace polarlens {

// One human judgment of a URL. (url, rater_id) pairs are unique.
struct Judgment {
  std::string url;       // normalized
  std::string rater_id;
  ExpandedLabel label = ExpandedLabel::OffTopic;
};

// How chance agreement is estimated for the fixed-marginal kappa.
enum class MarginalModel {
  PerRater,  // chance = sum_i p_A(i) * p_B(i)
  Pooled,    // chance = sum_i ((p_A(i)+p_B(i))/2)^2
};

struct AgreementReport {
  double overall_agreement = 0.0;
  double kappa_free = 0.0;    // chance fixed at 1/k
  double kappa_fixed = 0.0;   // chance from observed marginals
  double chance_expected = 0.0;
  std::size_t category_count = 0;  // 5 at high tier, 8 expanded
  std::size_t co_judged_urls = 0;
};

// Free-marginal kappa: (overall - 1/k) / (1 - 1/k).
double kappa_free_marginal(double overall_agreement, std::size_t k);

// Fixed-marginal kappa: (overall - chance) / (1 - chance). When chance
// is 1 (both raters constant and identical) the ratio is taken as 1 for
// perfect agreement and 0 otherwise.
double kappa_fixed_marginal(double overall_agreement, double chance_expected);

// Agreement over the URLs judged by both raters, compared at the
// requested tier (high folds labels to 5 categories incl. OffTopic and
// NotAccessible; expanded keeps all 8). Requires exactly two distinct
// rater_ids across the judgment list and at least one co-judged URL.
AgreementReport agreement_report(std::span<const Judgment> judgments, Tier tier,
                                 MarginalModel model = MarginalModel::PerRater);

// Proportion of each expanded stance category among the labeled entries,
// OffTopic/NotAccessible excluded. Errors on an effectively empty map.
std::map<ExpandedLabel, double> label_distribution(const LabelMap& labels);

// Judgments CSV: `url,rater_id,label` (optional header), label one of
// EC, MC, HB, PF, MR, ER, OFF, NA. URLs are normalized; duplicate
// (url, rater) pairs are an error.
std::vector<Judgment> load_judgment_csv(const std::filesystem::path& path);

}  // namespace polarlens

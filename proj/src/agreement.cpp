/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/agreement.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <unordered_map>

#include "polarlens/logio.hpp"
#include "polarlens/url.hpp"

namespace polarlens {

namespace {

constexpr double kEps = 1e-12;

// Category index at a tier, OffTopic/NotAccessible included: 0..4 at the
// high tier, 0..7 expanded.
std::size_t category_index(ExpandedLabel e, Tier tier) {
  if (tier == Tier::Expanded) return static_cast<std::size_t>(e);
  return static_cast<std::size_t>(fold(e));
}

}  // namespace

double kappa_free_marginal(double overall_agreement, std::size_t k) {
  if (k < 2) {
    throw std::invalid_argument("annotation: kappa needs k >= 2 categories");
  }
  double chance = 1.0 / static_cast<double>(k);
  return (overall_agreement - chance) / (1.0 - chance);
}

double kappa_fixed_marginal(double overall_agreement, double chance_expected) {
  if (chance_expected < 0.0 || chance_expected > 1.0) {
    throw std::invalid_argument("annotation: chance agreement must be in [0,1]");
  }
  if (chance_expected >= 1.0 - kEps) {
    return overall_agreement >= 1.0 - kEps ? 1.0 : 0.0;
  }
  return (overall_agreement - chance_expected) / (1.0 - chance_expected);
}

AgreementReport agreement_report(std::span<const Judgment> judgments, Tier tier,
                                 MarginalModel model) {
  std::set<std::string> raters;
  for (const auto& j : judgments) raters.insert(j.rater_id);
  if (raters.size() < 2) {
    throw std::invalid_argument("annotation: agreement requires two raters");
  }
  if (raters.size() > 2) {
    throw std::invalid_argument(
        "annotation: more than two raters; pairwise agreement only");
  }
  const std::string& rater_a = *raters.begin();

  struct Pair {
    ExpandedLabel a = ExpandedLabel::OffTopic;
    ExpandedLabel b = ExpandedLabel::OffTopic;
    bool has_a = false;
    bool has_b = false;
  };
  std::unordered_map<std::string, Pair> by_url;
  for (const auto& j : judgments) {
    Pair& p = by_url[j.url];
    bool is_a = j.rater_id == rater_a;
    bool& has = is_a ? p.has_a : p.has_b;
    if (has) {
      throw std::invalid_argument("annotation: duplicate judgment for url '" +
                                  j.url + "' by rater '" + j.rater_id + "'");
    }
    has = true;
    (is_a ? p.a : p.b) = j.label;
  }

  const std::size_t k = tier == Tier::High ? 5 : 8;
  std::array<double, 8> marg_a{};
  std::array<double, 8> marg_b{};
  std::size_t co_judged = 0;
  std::size_t matches = 0;
  for (const auto& [_, p] : by_url) {
    if (!p.has_a || !p.has_b) continue;
    ++co_judged;
    std::size_t ia = category_index(p.a, tier);
    std::size_t ib = category_index(p.b, tier);
    if (ia == ib) ++matches;
    marg_a[ia] += 1.0;
    marg_b[ib] += 1.0;
  }
  if (co_judged == 0) {
    throw std::invalid_argument("annotation: raters share no judged URLs");
  }

  AgreementReport r;
  r.category_count = k;
  r.co_judged_urls = co_judged;
  r.overall_agreement = static_cast<double>(matches) / static_cast<double>(co_judged);
  double chance = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double pa = marg_a[i] / static_cast<double>(co_judged);
    double pb = marg_b[i] / static_cast<double>(co_judged);
    if (model == MarginalModel::PerRater) {
      chance += pa * pb;
    } else {
      double pooled = 0.5 * (pa + pb);
      chance += pooled * pooled;
    }
  }
  r.chance_expected = chance;
  r.kappa_free = kappa_free_marginal(r.overall_agreement, k);
  r.kappa_fixed = kappa_fixed_marginal(r.overall_agreement, chance);
  return r;
}

std::map<ExpandedLabel, double> label_distribution(const LabelMap& labels) {
  std::map<ExpandedLabel, double> counts;
  std::size_t total = 0;
  for (const auto& [_, label] : labels) {
    if (!is_stance(label)) continue;
    counts[label] += 1.0;
    ++total;
  }
  if (total == 0) {
    throw std::invalid_argument(
        "annotation: no stance-labeled entries to summarize");
  }
  for (auto& [_, v] : counts) v /= static_cast<double>(total);
  return counts;
}

std::vector<Judgment> load_judgment_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("annotation: cannot open judgments '" + path.string() +
                     "'");
  }
  std::vector<Judgment> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw ParseError("annotation: " + path.filename().string() + ":" +
                       std::to_string(line_no) +
                       ": expected 'url,rater_id,label'");
    }
    if (line_no == 1 && fields[2] == "label") continue;
    Judgment j;
    j.url = normalize_url(fields[0]);
    j.rater_id = fields[1];
    try {
      j.label = parse_label_code(fields[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError("annotation: " + path.filename().string() + ":" +
                       std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.insert({j.url, j.rater_id}).second) {
      throw ParseError("annotation: " + path.filename().string() + ":" +
                       std::to_string(line_no) + ": duplicate judgment for '" +
                       j.url + "' by '" + j.rater_id + "'");
    }
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace polarlens

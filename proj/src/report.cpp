/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "polarlens/json.hpp"

namespace polarlens {

Json to_json(const DatasetSummary& s) {
  return {{"users", s.users},
          {"sessions", s.sessions},
          {"unique_urls", s.unique_urls},
          {"unique_domains", s.unique_domains},
          {"total_visits", s.total_visits}};
}

DatasetSummary dataset_summary_from_json(const Json& j) {
  DatasetSummary s;
  s.users = j.at("users").get<std::size_t>();
  s.sessions = j.at("sessions").get<std::size_t>();
  s.unique_urls = j.at("unique_urls").get<std::size_t>();
  s.unique_domains = j.at("unique_domains").get<std::size_t>();
  s.total_visits = j.at("total_visits").get<std::size_t>();
  return s;
}

Json to_json(const AgreementReport& r) {
  return {{"overall_agreement", r.overall_agreement},
          {"kappa_free", r.kappa_free},
          {"kappa_fixed", r.kappa_fixed},
          {"chance_expected", r.chance_expected},
          {"category_count", r.category_count},
          {"co_judged_urls", r.co_judged_urls}};
}

AgreementReport agreement_from_json(const Json& j) {
  AgreementReport r;
  r.overall_agreement = j.at("overall_agreement").get<double>();
  r.kappa_free = j.at("kappa_free").get<double>();
  r.kappa_fixed = j.at("kappa_fixed").get<double>();
  r.chance_expected = j.at("chance_expected").get<double>();
  r.category_count = j.at("category_count").get<std::size_t>();
  r.co_judged_urls = j.at("co_judged_urls").get<std::size_t>();
  return r;
}

Json to_json(const MobilityReport& r) {
  return {{"immobility_ratio", r.immobility_ratio},
          {"moving_up", r.moving_up},
          {"moving_down", r.moving_down},
          {"m_eigen", r.m_eigen},
          {"m_second", r.m_second},
          {"m_det", r.m_det},
          {"m_svd", r.m_svd},
          {"has_empty_rows", r.has_empty_rows}};
}

MobilityReport mobility_from_json(const Json& j) {
  MobilityReport r;
  r.immobility_ratio = j.at("immobility_ratio").get<double>();
  r.moving_up = j.at("moving_up").get<double>();
  r.moving_down = j.at("moving_down").get<double>();
  r.m_eigen = j.at("m_eigen").get<double>();
  r.m_second = j.at("m_second").get<double>();
  r.m_det = j.at("m_det").get<double>();
  r.m_svd = j.at("m_svd").get<double>();
  r.has_empty_rows = j.at("has_empty_rows").get<bool>();
  return r;
}

Json to_json(const DistanceReport& r) {
  return {{"l1", r.l1}, {"l2", r.l2}, {"d_svd", r.d_svd}, {"d1", r.d1},
          {"d3", r.d3}};
}

DistanceReport distances_from_json(const Json& j) {
  DistanceReport r;
  r.l1 = j.at("l1").get<double>();
  r.l2 = j.at("l2").get<double>();
  r.d_svd = j.at("d_svd").get<double>();
  r.d1 = j.at("d1").get<double>();
  r.d3 = j.at("d3").get<double>();
  return r;
}

Json to_json(const MediatorReport& r) {
  Json j{{"direct_control_to_rights", r.direct_control_to_rights},
                   {"indirect_control_to_rights", r.indirect_control_to_rights},
                   {"direct_rights_to_control", r.direct_rights_to_control},
                   {"indirect_rights_to_control", r.indirect_rights_to_control}};
  if (r.pct_direct_control_to_rights) {
    j["pct_direct_control_to_rights"] = *r.pct_direct_control_to_rights;
  }
  if (r.pct_direct_rights_to_control) {
    j["pct_direct_rights_to_control"] = *r.pct_direct_rights_to_control;
  }
  return j;
}

MediatorReport mediators_from_json(const Json& j) {
  MediatorReport r;
  r.direct_control_to_rights = j.at("direct_control_to_rights").get<std::uint64_t>();
  r.indirect_control_to_rights =
      j.at("indirect_control_to_rights").get<std::uint64_t>();
  r.direct_rights_to_control = j.at("direct_rights_to_control").get<std::uint64_t>();
  r.indirect_rights_to_control =
      j.at("indirect_rights_to_control").get<std::uint64_t>();
  if (j.contains("pct_direct_control_to_rights")) {
    r.pct_direct_control_to_rights =
        j.at("pct_direct_control_to_rights").get<double>();
  }
  if (j.contains("pct_direct_rights_to_control")) {
    r.pct_direct_rights_to_control =
        j.at("pct_direct_rights_to_control").get<double>();
  }
  return r;
}

Json to_json(const EntropyStat& s) {
  return {{"id", s.id},
          {"raw_bits", s.raw_bits},
          {"normalized", s.normalized},
          {"n_observations", s.n_observations}};
}

Json to_json(const std::vector<EntropyStat>& stats) {
  auto arr = Json::array();
  for (const auto& s : stats) arr.push_back(to_json(s));
  return arr;
}

std::vector<EntropyStat> entropy_stats_from_json(const Json& j) {
  std::vector<EntropyStat> out;
  for (const auto& item : j) {
    EntropyStat s;
    s.id = item.at("id").get<std::string>();
    s.raw_bits = item.at("raw_bits").get<double>();
    s.normalized = item.at("normalized").get<double>();
    s.n_observations = item.at("n_observations").get<std::size_t>();
    out.push_back(std::move(s));
  }
  return out;
}

Json to_json(const DiversityChangeReport& r) {
  auto users = Json::array();
  for (const auto& c : r.per_user) {
    users.push_back({{"user_id", c.user_id},
                     {"h_before", c.h_before},
                     {"h_after", c.h_after},
                     {"delta", c.delta}});
  }
  return {{"per_user", std::move(users)},
          {"n_users", r.n_users},
          {"mean_delta", r.mean_delta},
          {"pct_unchanged", r.pct_unchanged},
          {"pct_increased", r.pct_increased},
          {"pct_decreased", r.pct_decreased},
          {"mean_increase", r.mean_increase},
          {"mean_decrease", r.mean_decrease}};
}

DiversityChangeReport diversity_change_from_json(const Json& j) {
  DiversityChangeReport r;
  for (const auto& item : j.at("per_user")) {
    DiversityChange c;
    c.user_id = item.at("user_id").get<std::string>();
    c.h_before = item.at("h_before").get<double>();
    c.h_after = item.at("h_after").get<double>();
    c.delta = item.at("delta").get<double>();
    r.per_user.push_back(std::move(c));
  }
  r.n_users = j.at("n_users").get<std::size_t>();
  r.mean_delta = j.at("mean_delta").get<double>();
  r.pct_unchanged = j.at("pct_unchanged").get<double>();
  r.pct_increased = j.at("pct_increased").get<double>();
  r.pct_decreased = j.at("pct_decreased").get<double>();
  r.mean_increase = j.at("mean_increase").get<double>();
  r.mean_decrease = j.at("mean_decrease").get<double>();
  return r;
}

Json entropy_aggregate_json(const std::vector<EntropyStat>& stats) {
  Json j;
  j["count"] = stats.size();
  if (stats.empty()) {
    j["share_zero"] = 0.0;
    j["mean_normalized"] = 0.0;
    j["median_normalized"] = 0.0;
    return j;
  }
  std::vector<double> values;
  values.reserve(stats.size());
  std::size_t zeros = 0;
  double sum = 0.0;
  for (const auto& s : stats) {
    values.push_back(s.normalized);
    sum += s.normalized;
    if (s.normalized < 1e-12) ++zeros;
  }
  std::sort(values.begin(), values.end());
  double median = values.size() % 2 == 1
                      ? values[values.size() / 2]
                      : 0.5 * (values[values.size() / 2 - 1] +
                               values[values.size() / 2]);
  j["share_zero"] = static_cast<double>(zeros) / static_cast<double>(values.size());
  j["mean_normalized"] = sum / static_cast<double>(values.size());
  j["median_normalized"] = median;
  return j;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  // Avoid the "-0.00" artifact.
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') {
    s.erase(0, 1);
  }
  return s;
}

namespace {

constexpr int kPercentDecimals = 2;
constexpr int kIndexDecimals = 4;

std::string pad(const std::string& s, std::size_t width, bool right_align) {
  if (s.size() >= width) return s;
  std::string fill(width - s.size(), ' ');
  return right_align ? fill + s : s + fill;
}

// Renders rows as aligned columns; col 0 left-aligned, others right.
std::string table(const std::vector<std::vector<std::string>>& rows,
                  const std::string& indent) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (widths.size() <= c) widths.push_back(0);
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    os << indent;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << "  ";
      os << pad(row[c], widths[c], c > 0);
    }
    os << '\n';
  }
  return os.str();
}

std::string pct(double v) { return format_fixed(v, kPercentDecimals); }
std::string idx(double v) { return format_fixed(v, kIndexDecimals); }

void render_matrix_block(std::ostringstream& os, const std::string& title,
                         const Json& m) {
  os << title << " (% per row)\n";
  const auto& ordering = m.at("ordering");
  const auto& probs = m.at("probabilities");
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{""};
  for (const auto& code : ordering) header.push_back(code.get<std::string>());
  rows.push_back(std::move(header));
  for (std::size_t i = 0; i < probs.size(); ++i) {
    std::vector<std::string> row{ordering.at(i).get<std::string>()};
    for (const auto& cell : probs.at(i)) {
      row.push_back(pct(cell.get<double>() * 100.0));
    }
    rows.push_back(std::move(row));
  }
  os << table(rows, "  ");
  if (m.contains("empty_rows") && !m.at("empty_rows").empty()) {
    os << "  note: states";
    for (const auto& i : m.at("empty_rows")) {
      os << ' ' << ordering.at(i.get<std::size_t>()).get<std::string>();
    }
    os << " were never a source; their rows are empty and excluded from"
          " IR/MU/MD averages\n";
  }
  os << '\n';
}

void render_summary_block(std::ostringstream& os, const Json& ds) {
  os << "DATASET\n";
  std::vector<std::vector<std::string>> rows{
      {"period", "users", "sessions", "unique urls", "unique domains",
       "visits"}};
  for (const char* period : {"overall", "before", "after"}) {
    if (!ds.contains(period)) continue;
    const auto& s = ds.at(period);
    rows.push_back({period, std::to_string(s.at("users").get<std::size_t>()),
                    std::to_string(s.at("sessions").get<std::size_t>()),
                    std::to_string(s.at("unique_urls").get<std::size_t>()),
                    std::to_string(s.at("unique_domains").get<std::size_t>()),
                    std::to_string(s.at("total_visits").get<std::size_t>())});
  }
  os << table(rows, "  ") << '\n';
}

void render_agreement_block(std::ostringstream& os, const Json& ag) {
  os << "INTER-RATER AGREEMENT\n";
  std::vector<std::vector<std::string>> rows{
      {"tier", "categories", "overall %", "free-marginal k", "fixed-marginal k",
       "chance %"}};
  for (const char* tier : {"high", "expanded"}) {
    if (!ag.contains(tier)) continue;
    const auto& r = ag.at(tier);
    rows.push_back(
        {tier, std::to_string(r.at("category_count").get<std::size_t>()),
         pct(r.at("overall_agreement").get<double>() * 100.0),
         idx(r.at("kappa_free").get<double>()),
         idx(r.at("kappa_fixed").get<double>()),
         pct(r.at("chance_expected").get<double>() * 100.0)});
  }
  os << table(rows, "  ") << '\n';
}

void render_queries_block(std::ostringstream& os, const Json& q) {
  os << "TOP RELEVANT QUERIES\n";
  std::vector<std::vector<std::string>> rows{{"rank", "query", "count"}};
  std::size_t rank = 1;
  for (const auto& pair : q) {
    rows.push_back({std::to_string(rank++), pair.at(0).get<std::string>(),
                    std::to_string(pair.at(1).get<std::size_t>())});
  }
  os << table(rows, "  ") << '\n';
}

void render_mobility_block(std::ostringstream& os, const Json& bundle) {
  std::vector<std::vector<std::string>> mob{
      {"scope", "IR", "MU", "MD", "M_E", "M_2", "M_D", "M_SVD"}};
  std::vector<std::vector<std::string>> dist{
      {"scope", "L1", "L2", "D_SVD", "D1", "D3"}};
  for (const auto& [period, tiers] : bundle.items()) {
    for (const char* tier : {"high", "expanded"}) {
      if (!tiers.contains(tier)) continue;
      const auto& node = tiers.at(tier);
      std::string scope = period + "/" + tier;
      const auto& m = node.at("mobility");
      mob.push_back({scope, idx(m.at("immobility_ratio").get<double>()),
                     idx(m.at("moving_up").get<double>()),
                     idx(m.at("moving_down").get<double>()),
                     idx(m.at("m_eigen").get<double>()),
                     idx(m.at("m_second").get<double>()),
                     idx(m.at("m_det").get<double>()),
                     idx(m.at("m_svd").get<double>())});
      const auto& d = node.at("distances");
      dist.push_back({scope, idx(d.at("l1").get<double>()),
                      idx(d.at("l2").get<double>()),
                      idx(d.at("d_svd").get<double>()),
                      idx(d.at("d1").get<double>()),
                      idx(d.at("d3").get<double>())});
    }
  }
  os << "MOBILITY INDICES\n" << table(mob, "  ") << '\n';
  os << "DISTANCE FROM THE IMMOBILE SYSTEM (Q = I)\n" << table(dist, "  ") << '\n';
}

void render_mediators_block(std::ostringstream& os, const Json& med) {
  os << "DIRECT CROSS-STANCE TRANSITIONS\n";
  std::vector<std::vector<std::string>> rows{
      {"period", "direction", "direct %", "direct", "mediated"}};
  for (const char* period : {"overall", "before", "after"}) {
    if (!med.contains(period)) continue;
    const auto& r = med.at(period);
    auto add = [&](const char* direction, const char* pct_key,
                   const char* direct_key, const char* indirect_key) {
      std::string percent = r.contains(pct_key)
                                ? pct(r.at(pct_key).get<double>())
                                : std::string("n/a");
      rows.push_back({period, direction, percent,
                      std::to_string(r.at(direct_key).get<std::uint64_t>()),
                      std::to_string(r.at(indirect_key).get<std::uint64_t>())});
    };
    add("control->rights", "pct_direct_control_to_rights",
        "direct_control_to_rights", "indirect_control_to_rights");
    add("rights->control", "pct_direct_rights_to_control",
        "direct_rights_to_control", "indirect_rights_to_control");
  }
  os << table(rows, "  ") << '\n';
}

void render_diversity_block(std::ostringstream& os, const Json& d) {
  os << "DIVERSITY\n";
  std::vector<std::vector<std::string>> rows{
      {"entities", "count", "share at zero", "mean", "median"}};
  for (const char* kind : {"domains", "users"}) {
    if (!d.contains(kind)) continue;
    const auto& a = d.at(kind);
    rows.push_back({kind, std::to_string(a.at("count").get<std::size_t>()),
                    pct(a.at("share_zero").get<double>() * 100.0) + "%",
                    idx(a.at("mean_normalized").get<double>()),
                    idx(a.at("median_normalized").get<double>())});
  }
  os << table(rows, "  ");
  if (d.contains("change")) {
    const auto& c = d.at("change");
    os << "  before/after entropy change over " << c.at("n_users").get<std::size_t>()
       << " common users: mean delta " << idx(c.at("mean_delta").get<double>())
       << ", increased " << pct(c.at("pct_increased").get<double>()) << "% (mean +"
       << idx(c.at("mean_increase").get<double>()) << "), decreased "
       << pct(c.at("pct_decreased").get<double>()) << "% (mean "
       << idx(c.at("mean_decrease").get<double>()) << "), unchanged "
       << pct(c.at("pct_unchanged").get<double>()) << "%\n";
  }
  os << '\n';
}

}  // namespace

std::string render_text_report(const Json& bundle) {
  std::ostringstream os;
  os << "POLARLENS REPORT\n================\n\n";
  if (bundle.contains("dataset")) render_summary_block(os, bundle.at("dataset"));
  if (bundle.contains("agreement")) {
    render_agreement_block(os, bundle.at("agreement"));
  }
  if (bundle.contains("top_queries")) {
    render_queries_block(os, bundle.at("top_queries"));
  }
  if (bundle.contains("transitions")) {
    const auto& tr = bundle.at("transitions");
    for (const auto& [period, tiers] : tr.items()) {
      for (const char* tier : {"high", "expanded"}) {
        if (!tiers.contains(tier)) continue;
        render_matrix_block(os, "TRANSITION MATRIX " + period + "/" + tier,
                            tiers.at(tier).at("matrix"));
      }
    }
    render_mobility_block(os, tr);
  }
  if (bundle.contains("mediators")) {
    render_mediators_block(os, bundle.at("mediators"));
  }
  if (bundle.contains("diversity")) {
    render_diversity_block(os, bundle.at("diversity"));
  }
  return os.str();
}

}  // namespace polarlens

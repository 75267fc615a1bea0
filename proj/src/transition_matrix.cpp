/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/transition_matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>
#include <unordered_map>

#include "polarlens/json.hpp"

#include "polarlens/logio.hpp"
#include "polarlens/threading.hpp"
#include "polarlens/url.hpp"

namespace polarlens {

namespace {

constexpr double kRowTolerance = 1e-9;

Tier tier_for_size(std::size_t n, const char* what) {
  if (n == kHighStates) return Tier::High;
  if (n == kExpandedStates) return Tier::Expanded;
  throw std::invalid_argument(std::string("transitions: ") + what +
                              " must have 3 or 6 states, got " +
                              std::to_string(n));
}

}  // namespace

void TransitionMatrix::derive_from_counts() {
  const std::size_t size = n();
  probabilities_.assign(size * size, 0.0);
  empty_rows_.assign(size, false);
  for (std::size_t i = 0; i < size; ++i) {
    std::uint64_t row_sum = 0;
    for (std::size_t j = 0; j < size; ++j) row_sum += counts_[i * size + j];
    if (row_sum == 0) {
      empty_rows_[i] = true;
      continue;
    }
    for (std::size_t j = 0; j < size; ++j) {
      probabilities_[i * size + j] = static_cast<double>(counts_[i * size + j]) /
                                     static_cast<double>(row_sum);
    }
  }
}

TransitionMatrix TransitionMatrix::from_counts(
    Tier tier, const std::vector<std::uint64_t>& counts) {
  TransitionMatrix m;
  m.ordering_ = StateOrdering{tier};
  if (counts.size() != m.n() * m.n()) {
    throw std::invalid_argument("transitions: count matrix has wrong shape");
  }
  m.counts_ = counts;
  m.derive_from_counts();
  return m;
}

TransitionMatrix TransitionMatrix::from_probabilities(
    Tier tier, const std::vector<double>& probabilities) {
  TransitionMatrix m;
  m.ordering_ = StateOrdering{tier};
  const std::size_t size = m.n();
  if (probabilities.size() != size * size) {
    throw std::invalid_argument(
        "transitions: probability matrix has wrong shape");
  }
  m.probabilities_ = probabilities;
  m.empty_rows_.assign(size, false);
  for (std::size_t i = 0; i < size; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
      double p = probabilities[i * size + j];
      if (p < 0.0 || p > 1.0 + kRowTolerance) {
        throw std::invalid_argument(
            "transitions: probability outside [0,1] at row " +
            std::to_string(i));
      }
      row_sum += p;
    }
    if (row_sum == 0.0) {
      m.empty_rows_[i] = true;
    } else if (std::fabs(row_sum - 1.0) > kRowTolerance) {
      throw std::invalid_argument("transitions: row " + std::to_string(i) +
                                  " sums to " + std::to_string(row_sum) +
                                  ", not 1");
    }
  }
  return m;
}

TransitionMatrix TransitionMatrix::identity(Tier tier) {
  StateOrdering ordering{tier};
  std::vector<double> p(ordering.size() * ordering.size(), 0.0);
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    p[i * ordering.size() + i] = 1.0;
  }
  return from_probabilities(tier, p);
}

TransitionMatrix TransitionMatrix::from_csv_file(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("transitions: cannot open matrix '" + path.string() + "'");
  }

  auto parse_cell = [](std::string field, double& out) {
    // Tolerate surrounding spaces and a trailing '%'.
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) {
      field.erase(field.begin());
    }
    while (!field.empty() &&
           (std::isspace(static_cast<unsigned char>(field.back())) ||
            field.back() == '%')) {
      field.pop_back();
    }
    if (field.empty()) return false;
    char* end = nullptr;
    out = std::strtod(field.c_str(), &end);
    return end == field.c_str() + field.size();
  };

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    std::vector<double> row;
    bool bad_cell = false;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      double v = 0.0;
      if (parse_cell(fields[i], v)) {
        row.push_back(v);
      } else if (i != 0) {  // a non-numeric first cell is a row label
        bad_cell = true;
      }
    }
    if (bad_cell || row.empty()) {
      if (rows.empty()) continue;  // header line
      throw ParseError("transitions: " + path.filename().string() + ":" +
                       std::to_string(line_no) + ": non-numeric matrix cell");
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) {
    throw ParseError("transitions: '" + path.string() + "' holds no matrix");
  }
  const std::size_t size = rows.size();
  tier_for_size(size, "matrix");
  std::vector<double> p(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    if (rows[i].size() != size) {
      throw ParseError("transitions: matrix is not square (" +
                       std::to_string(rows[i].size()) + " columns in row " +
                       std::to_string(i + 1) + ", " + std::to_string(size) +
                       " rows)");
    }
    double row_sum = 0.0;
    for (double v : rows[i]) {
      if (v < 0.0) {
        throw ParseError("transitions: negative matrix cell");
      }
      row_sum += v;
    }
    bool percent = row_sum > 50.0 && row_sum < 150.0;
    bool fraction = row_sum > 0.5 && row_sum < 1.5;
    if (!percent && !fraction) {
      throw ParseError("transitions: row " + std::to_string(i + 1) +
                       " sums to " + std::to_string(row_sum) +
                       "; expected ~100 (percent) or ~1 (fraction)");
    }
    // Renormalize: published tables are rounded to two decimals, so raw
    // rows can sum to 100 +- 0.02; exact stochasticity is restored here.
    for (std::size_t j = 0; j < size; ++j) {
      p[i * size + j] = rows[i][j] / row_sum;
    }
  }
  return from_probabilities(tier_for_size(size, "matrix"), p);
}

std::uint64_t TransitionMatrix::total_transitions() const {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts_) total += c;
  return total;
}

bool TransitionMatrix::has_empty_rows() const {
  return std::any_of(empty_rows_.begin(), empty_rows_.end(),
                     [](bool b) { return b; });
}

Json TransitionMatrix::to_json() const {
  Json j;
  const std::size_t size = n();
  j["ordering"] = Json::array();
  for (std::size_t i = 0; i < size; ++i) {
    j["ordering"].push_back(std::string(ordering_.code_at(i)));
  }
  if (has_counts()) {
    auto rows = Json::array();
    for (std::size_t i = 0; i < size; ++i) {
      auto row = Json::array();
      for (std::size_t k = 0; k < size; ++k) row.push_back(counts_[i * size + k]);
      rows.push_back(std::move(row));
    }
    j["counts"] = std::move(rows);
  }
  auto probs = Json::array();
  for (std::size_t i = 0; i < size; ++i) {
    auto row = Json::array();
    for (std::size_t k = 0; k < size; ++k) {
      row.push_back(probabilities_[i * size + k]);
    }
    probs.push_back(std::move(row));
  }
  j["probabilities"] = std::move(probs);
  j["empty_rows"] = Json::array();
  for (std::size_t i = 0; i < size; ++i) {
    if (empty_rows_[i]) j["empty_rows"].push_back(i);
  }
  return j;
}

TransitionMatrix TransitionMatrix::from_json(const Json& j) {
  const auto& ordering = j.at("ordering");
  Tier tier = tier_for_size(ordering.size(), "matrix");
  StateOrdering expect{tier};
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (ordering.at(i).get<std::string>() != expect.code_at(i)) {
      throw std::invalid_argument(
          "transitions: unexpected state ordering in matrix JSON");
    }
  }
  std::size_t size = expect.size();
  if (j.contains("counts")) {
    std::vector<std::uint64_t> counts;
    counts.reserve(size * size);
    for (const auto& row : j.at("counts")) {
      for (const auto& cell : row) counts.push_back(cell.get<std::uint64_t>());
    }
    return from_counts(tier, counts);
  }
  std::vector<double> p;
  p.reserve(size * size);
  for (const auto& row : j.at("probabilities")) {
    for (const auto& cell : row) p.push_back(cell.get<double>());
  }
  return from_probabilities(tier, p);
}

namespace {

struct TrailEntry {
  std::string domain;
  std::size_t state;
};

// Sorted visit pointers for one user.
using UserVisits = std::vector<const LogRecord*>;

std::vector<std::pair<std::string, UserVisits>> visits_by_user(
    const Dataset& ds, const TrailOptions& opts) {
  std::unordered_map<std::string, UserVisits> map;
  for (const auto& v : ds.visits) {
    if (opts.user_filter && opts.user_filter->count(v.user_id) == 0) continue;
    map[v.user_id].push_back(&v);
  }
  std::vector<std::pair<std::string, UserVisits>> users;
  users.reserve(map.size());
  for (auto& [user, visits] : map) {
    std::stable_sort(visits.begin(), visits.end(),
                     [](const LogRecord* a, const LogRecord* b) {
                       return a->timestamp < b->timestamp;
                     });
    users.push_back({user, std::move(visits)});
  }
  std::sort(users.begin(), users.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return users;
}

// Resolves a visit to (domain, state), exact URL label first, bare
// domain second; nullopt for unlabeled or OffTopic/NotAccessible visits.
std::optional<TrailEntry> resolve_visit(const LogRecord& v, const LabelMap& labels,
                                        const StateOrdering& ordering) {
  std::string nu = normalize_url(v.url);
  std::string domain = registered_domain(nu);
  const ExpandedLabel* label = nullptr;
  if (auto it = labels.find(nu); it != labels.end()) {
    label = &it->second;
  } else if (auto dit = labels.find(domain); dit != labels.end()) {
    label = &dit->second;
  }
  if (label == nullptr || !is_stance(*label)) return std::nullopt;
  return TrailEntry{std::move(domain), ordering.index_of(*label)};
}

// Builds the collapsed trails of one user and hands each to `sink`.
template <typename Sink>
void collapse_user(const UserVisits& visits, const LabelMap& labels,
                   const StateOrdering& ordering, bool per_session,
                   Sink&& sink) {
  std::vector<TrailEntry> trail;
  const std::string* session = nullptr;
  for (const LogRecord* v : visits) {
    if (per_session && session != nullptr && *session != v->session_id &&
        !trail.empty()) {
      sink(trail);
      trail.clear();
    }
    session = &v->session_id;
    auto entry = resolve_visit(*v, labels, ordering);
    if (!entry) continue;
    if (!trail.empty() && trail.back().domain == entry->domain) continue;
    trail.push_back(std::move(*entry));
  }
  if (!trail.empty()) sink(trail);
}

}  // namespace

TransitionMatrix build_transition_matrix(const Dataset& ds, Tier tier,
                                         const TrailOptions& opts) {
  const StateOrdering ordering{tier};
  const std::size_t size = ordering.size();
  auto users = visits_by_user(ds, opts);

  std::size_t workers = std::min(thread_budget(), std::max<std::size_t>(users.size(), 1));
  std::vector<std::vector<std::uint64_t>> partials(
      workers, std::vector<std::uint64_t>(size * size, 0));

  auto count_range = [&](std::size_t begin, std::size_t end,
                         std::vector<std::uint64_t>& counts) {
    for (std::size_t u = begin; u < end; ++u) {
      collapse_user(users[u].second, ds.labels, ordering, opts.per_session,
                    [&](const std::vector<TrailEntry>& trail) {
                      for (std::size_t i = 1; i < trail.size(); ++i) {
                        ++counts[trail[i - 1].state * size + trail[i].state];
                      }
                    });
    }
  };

  if (workers <= 1) {
    count_range(0, users.size(), partials[0]);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (users.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(users.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(count_range, begin, end, std::ref(partials[w]));
    }
    for (auto& t : pool) t.join();
  }

  // Per-thread counts merge by addition, so the result does not depend
  // on the partitioning.
  std::vector<std::uint64_t> counts(size * size, 0);
  for (const auto& partial : partials) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += partial[i];
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) {
    throw std::invalid_argument(
        "transitions: no qualifying transitions in the dataset");
  }
  return TransitionMatrix::from_counts(tier, counts);
}

std::vector<std::pair<std::string, std::vector<std::size_t>>> build_trails(
    const Dataset& ds, Tier tier, const TrailOptions& opts) {
  const StateOrdering ordering{tier};
  std::vector<std::pair<std::string, std::vector<std::size_t>>> out;
  for (const auto& [user, visits] : visits_by_user(ds, opts)) {
    collapse_user(visits, ds.labels, ordering, opts.per_session,
                  [&](const std::vector<TrailEntry>& trail) {
                    std::vector<std::size_t> states;
                    states.reserve(trail.size());
                    for (const auto& e : trail) states.push_back(e.state);
                    out.push_back({user, std::move(states)});
                  });
  }
  return out;
}

}  // namespace polarlens

/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/synth.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <unordered_set>

#include "polarlens/json.hpp"

#include "polarlens/logio.hpp"
#include "polarlens/url.hpp"

namespace polarlens {

namespace {

// Thin deterministic sampling layer over mt19937_64. The standard
// distribution objects are not bit-stable across implementations, so
// every draw is spelled out here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double real() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  std::size_t below(std::size_t n) {  // [0, n)
    return n <= 1 ? 0 : static_cast<std::size_t>(gen_() % n);
  }

  std::size_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::size_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= real();
    } while (p > limit);
    return k - 1;
  }

  std::size_t sample_row(const TransitionMatrix& m, std::size_t row) {
    double u = real();
    double cum = 0.0;
    for (std::size_t j = 0; j < m.n(); ++j) {
      cum += m.p(row, j);
      if (u < cum) return j;
    }
    return m.n() - 1;
  }

 private:
  std::mt19937_64 gen_;
};

ExpandedLabel representative_label(Tier tier, std::size_t state) {
  if (tier == Tier::Expanded) {
    return ExpandedLabel(static_cast<unsigned char>(state));
  }
  constexpr std::array<ExpandedLabel, kHighStates> kHighReps = {
      ExpandedLabel::ModerateControl, ExpandedLabel::PurelyFactual,
      ExpandedLabel::ModerateRights};
  return kHighReps[state];
}

TransitionMatrix chain_from_json_rows(Tier tier, const Json& rows) {
  std::size_t n = rows.size();
  std::vector<double> p(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (row.size() != n) {
      throw ParseError("synth: chain is not square");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      p[i * n + j] = row.at(j).get<double>();
      sum += p[i * n + j];
    }
    bool percent = sum > 50.0 && sum < 150.0;
    bool fraction = sum > 0.5 && sum < 1.5;
    if (!percent && !fraction) {
      throw ParseError("synth: chain row " + std::to_string(i + 1) +
                       " sums to " + std::to_string(sum));
    }
    for (std::size_t j = 0; j < n; ++j) p[i * n + j] /= sum;
  }
  return TransitionMatrix::from_probabilities(tier, p);
}

std::string lower_state_code(const StateOrdering& ordering, std::size_t i) {
  std::string code(ordering.code_at(i));
  std::transform(code.begin(), code.end(), code.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return code;
}

}  // namespace

SynthConfig SynthConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("synth: cannot open config '" + path.string() + "'");
  }
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError("synth: bad config '" + path.string() + "': " + e.what());
  }

  SynthConfig cfg;
  Tier tier = Tier::High;
  if (j.contains("tier")) {
    std::string t = j.at("tier").get<std::string>();
    if (t == "high") {
      tier = Tier::High;
    } else if (t == "expanded") {
      tier = Tier::Expanded;
    } else {
      throw ParseError("synth: tier must be 'high' or 'expanded'");
    }
  }
  cfg.seed = j.value("seed", cfg.seed);
  cfg.user_count = j.value("users", cfg.user_count);
  cfg.mean_sessions_per_user =
      j.value("mean_sessions_per_user", cfg.mean_sessions_per_user);
  cfg.mean_visits_per_session =
      j.value("mean_visits_per_session", cfg.mean_visits_per_session);
  cfg.urls_per_domain = j.value("urls_per_domain", cfg.urls_per_domain);
  cfg.time_start = j.value("time_start", cfg.time_start);
  cfg.event_time = j.value("event_time", cfg.event_time);
  cfg.time_end = j.value("time_end", cfg.time_end);
  cfg.post_event_rate_multiplier =
      j.value("post_event_rate_multiplier", cfg.post_event_rate_multiplier);
  cfg.emit_queries = j.value("emit_queries", cfg.emit_queries);
  cfg.query_phrase = j.value("query_phrase", cfg.query_phrase);
  cfg.record_trails = j.value("record_trails", cfg.record_trails);

  if (!j.contains("chain")) {
    throw ParseError("synth: config needs a ground-truth 'chain'");
  }
  cfg.chain = chain_from_json_rows(tier, j.at("chain"));
  if (j.contains("post_event_chain")) {
    cfg.post_event_chain = chain_from_json_rows(tier, j.at("post_event_chain"));
  }

  StateOrdering ordering{tier};
  if (j.contains("pools")) {
    for (const auto& pool : j.at("pools")) {
      cfg.pools.emplace_back();
      for (const auto& d : pool) {
        cfg.pools.back().push_back(d.get<std::string>());
      }
    }
  } else {
    std::size_t per_state = j.value("domains_per_state", std::size_t{3});
    for (std::size_t s = 0; s < ordering.size(); ++s) {
      cfg.pools.emplace_back();
      for (std::size_t k = 0; k < per_state; ++k) {
        cfg.pools.back().push_back(lower_state_code(ordering, s) +
                                   std::to_string(k) + ".example");
      }
    }
  }
  cfg.validate();
  return cfg;
}

void SynthConfig::validate() const {
  const std::size_t n = chain.n();
  if (user_count == 0) {
    throw std::invalid_argument("synth: user_count must be positive");
  }
  if (mean_sessions_per_user < 1.0 || mean_visits_per_session < 1.0) {
    throw std::invalid_argument("synth: session/visit means must be >= 1");
  }
  if (urls_per_domain == 0) {
    throw std::invalid_argument("synth: urls_per_domain must be positive");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (chain.row_empty(i)) {
      throw std::invalid_argument("synth: ground-truth chain row " +
                                  std::to_string(i) + " is empty");
    }
  }
  if (post_event_chain) {
    if (post_event_chain->tier() != chain.tier()) {
      throw std::invalid_argument(
          "synth: post-event chain must match the main chain's states");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (post_event_chain->row_empty(i)) {
        throw std::invalid_argument("synth: post-event chain row " +
                                    std::to_string(i) + " is empty");
      }
    }
  }
  if (pools.size() != n) {
    throw std::invalid_argument("synth: need one domain pool per state");
  }
  std::unordered_set<std::string> all_domains;
  for (const auto& pool : pools) {
    // Two domains per state keep consecutive visits on distinct domains,
    // so the estimator's collapse never swallows a planted transition.
    if (pool.size() < 2) {
      throw std::invalid_argument("synth: each state pool needs >= 2 domains");
    }
    for (const auto& d : pool) {
      if (!all_domains.insert(d).second) {
        throw std::invalid_argument("synth: domain '" + d +
                                    "' appears in two pools");
      }
      // Bookkeeping counts domains verbatim, so pool entries must be
      // exactly what normalization and domain grouping would produce.
      if (normalize_url(d) != d || registered_domain(d) != d) {
        throw std::invalid_argument("synth: pool entry '" + d +
                                    "' is not a bare registered domain");
      }
    }
  }
  if (time_start >= time_end) {
    throw std::invalid_argument("synth: time window is empty");
  }
  if (post_event_rate_multiplier < 0.0) {
    throw std::invalid_argument("synth: rate multiplier must be >= 0");
  }
  double wb = static_cast<double>(std::max<std::int64_t>(0, event_time - time_start));
  double wa = static_cast<double>(std::max<std::int64_t>(0, time_end - event_time)) *
              post_event_rate_multiplier;
  if (wb + wa <= 0.0) {
    throw std::invalid_argument("synth: no period can receive sessions");
  }
}

DatasetSummary SynthBookkeeping::expected_summary() const {
  return DatasetSummary{users, sessions, unique_urls, unique_domains, visits};
}

SynthOutput generate_logs(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const std::size_t n = cfg.chain.n();
  const Tier tier = cfg.chain.tier();

  SynthOutput out;
  SynthBookkeeping& bk = out.bookkeeping;
  bk.tier = tier;
  bk.realized_overall.assign(n * n, 0);
  bk.realized_before.assign(n * n, 0);
  bk.realized_after.assign(n * n, 0);

  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& domain : cfg.pools[s]) {
      out.dataset.labels[domain] = representative_label(tier, s);
    }
  }

  const double wb =
      static_cast<double>(std::max<std::int64_t>(0, cfg.event_time - cfg.time_start));
  const double wa =
      static_cast<double>(std::max<std::int64_t>(0, cfg.time_end - cfg.event_time)) *
      cfg.post_event_rate_multiplier;
  const double p_before = wb / (wb + wa);

  const std::array<std::string, 4> query_templates = {
      cfg.query_phrase, cfg.query_phrase + " laws",
      cfg.query_phrase + " debate", cfg.query_phrase + " petition"};
  std::size_t query_rotor = 0;

  std::set<std::string> urls_seen;
  std::unordered_set<std::string> domains_seen;

  for (std::size_t u = 0; u < cfg.user_count; ++u) {
    std::string user_id = "u" + std::to_string(u);
    if (user_id.size() < 6) user_id.insert(1, 6 - user_id.size(), '0');

    std::size_t n_sessions = 1 + rng.poisson(cfg.mean_sessions_per_user - 1.0);
    std::size_t before_sessions = 0;
    for (std::size_t s = 0; s < n_sessions; ++s) {
      if (rng.real() < p_before) ++before_sessions;
    }
    bk.sessions += n_sessions;
    ++bk.users;

    bool user_started = false;
    std::size_t state = 0;
    std::string prev_domain;
    bool prev_after = false;
    std::size_t session_no = 0;
    std::vector<std::size_t>* trail = nullptr;
    if (cfg.record_trails) trail = &bk.trails[user_id];

    auto run_period = [&](bool after, std::size_t sessions) {
      if (sessions == 0) return;
      std::int64_t clock = after ? std::max(cfg.event_time, cfg.time_start)
                                 : cfg.time_start;
      const std::int64_t limit = after ? cfg.time_end : cfg.event_time;
      const TransitionMatrix& chain =
          after && cfg.post_event_chain ? *cfg.post_event_chain : cfg.chain;
      for (std::size_t s = 0; s < sessions; ++s) {
        std::string session_id = "s" + std::to_string(session_no++);
        clock += 60 + static_cast<std::int64_t>(rng.below(240));
        std::size_t n_visits = 1 + rng.poisson(cfg.mean_visits_per_session - 1.0);
        for (std::size_t v = 0; v < n_visits; ++v) {
          clock += 1 + static_cast<std::int64_t>(rng.below(29));
          if (clock >= limit) {
            throw std::invalid_argument(
                "synth: time window too small for the configured activity");
          }
          if (!user_started) {
            state = rng.below(n);
            user_started = true;
          } else {
            std::size_t next = rng.sample_row(chain, state);
            bk.realized_overall[state * n + next] += 1;
            if (after == prev_after) {
              (after ? bk.realized_after : bk.realized_before)[state * n + next] += 1;
            }
            state = next;
          }

          // Next domain never repeats the previous one, so the
          // analysis-side collapse sees every planted transition.
          const auto& pool = cfg.pools[state];
          std::string domain;
          auto prev_it = std::find(pool.begin(), pool.end(), prev_domain);
          if (prev_it == pool.end()) {
            domain = pool[rng.below(pool.size())];
          } else {
            std::size_t k = rng.below(pool.size() - 1);
            std::size_t skip = static_cast<std::size_t>(prev_it - pool.begin());
            domain = pool[k < skip ? k : k + 1];
          }

          std::size_t page = rng.below(cfg.urls_per_domain);
          std::string page_path = domain + "/p" + std::to_string(page);
          out.dataset.visits.push_back(
              {user_id, session_id, "http://" + page_path, clock});

          ++bk.visits;
          (after ? bk.visits_after : bk.visits_before) += 1;
          urls_seen.insert(std::move(page_path));
          bool new_domain = domains_seen.insert(domain).second;
          if (trail != nullptr) trail->push_back(state);

          if (cfg.emit_queries && (v == 0 || new_domain)) {
            const std::string& text =
                query_templates[query_rotor++ % query_templates.size()];
            out.dataset.queries.push_back(
                {user_id, session_id, text, "http://" + domain, clock});
            bk.query_counts[text] += 1;
          }

          prev_domain = std::move(domain);
          prev_after = after;
        }
      }
    };

    run_period(/*after=*/false, before_sessions);
    run_period(/*after=*/true, n_sessions - before_sessions);
  }

  bk.unique_urls = urls_seen.size();
  bk.unique_domains = domains_seen.size();
  return out;
}

Json SynthBookkeeping::to_json() const {
  const StateOrdering ordering{tier};
  const std::size_t n = ordering.size();
  auto matrix_rows = [&](const std::vector<std::uint64_t>& counts) {
    auto rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      auto row = Json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(counts[i * n + j]);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  Json j;
  j["tier"] = tier == Tier::High ? "high" : "expanded";
  j["users"] = users;
  j["sessions"] = sessions;
  j["visits"] = visits;
  j["unique_urls"] = unique_urls;
  j["unique_domains"] = unique_domains;
  j["visits_before"] = visits_before;
  j["visits_after"] = visits_after;
  j["realized_transitions"] = {
      {"overall", matrix_rows(realized_overall)},
      {"before", matrix_rows(realized_before)},
      {"after", matrix_rows(realized_after)},
  };
  j["query_counts"] = query_counts;
  if (!trails.empty()) j["trails"] = trails;
  return j;
}

SynthBookkeeping SynthBookkeeping::from_json(const Json& j) {
  SynthBookkeeping bk;
  std::string tier = j.at("tier").get<std::string>();
  bk.tier = tier == "high" ? Tier::High : Tier::Expanded;
  bk.users = j.at("users").get<std::size_t>();
  bk.sessions = j.at("sessions").get<std::size_t>();
  bk.visits = j.at("visits").get<std::size_t>();
  bk.unique_urls = j.at("unique_urls").get<std::size_t>();
  bk.unique_domains = j.at("unique_domains").get<std::size_t>();
  bk.visits_before = j.at("visits_before").get<std::size_t>();
  bk.visits_after = j.at("visits_after").get<std::size_t>();
  auto read_matrix = [&](const Json& rows,
                         std::vector<std::uint64_t>& out) {
    for (const auto& row : rows) {
      for (const auto& cell : row) out.push_back(cell.get<std::uint64_t>());
    }
  };
  const auto& realized = j.at("realized_transitions");
  read_matrix(realized.at("overall"), bk.realized_overall);
  read_matrix(realized.at("before"), bk.realized_before);
  read_matrix(realized.at("after"), bk.realized_after);
  if (j.contains("query_counts")) {
    bk.query_counts =
        j.at("query_counts").get<std::map<std::string, std::size_t>>();
  }
  if (j.contains("trails")) {
    bk.trails =
        j.at("trails").get<std::map<std::string, std::vector<std::size_t>>>();
  }
  return bk;
}

void save_visit_tsv(const std::vector<LogRecord>& visits,
                    const std::filesystem::path& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) {
    throw ParseError("io: cannot write '" + path.string() + "'");
  }
  for (const auto& v : visits) {
    outf << v.user_id << '\t' << v.session_id << '\t' << v.url << '\t'
         << v.timestamp << '\n';
  }
}

void save_query_tsv(const std::vector<QueryRecord>& queries,
                    const std::filesystem::path& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) {
    throw ParseError("io: cannot write '" + path.string() + "'");
  }
  for (const auto& q : queries) {
    outf << q.user_id << '\t' << q.session_id << '\t' << q.query << '\t'
         << q.clicked_url << '\t' << q.timestamp << '\n';
  }
}

void save_label_csv(const LabelMap& labels, const std::filesystem::path& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) {
    throw ParseError("io: cannot write '" + path.string() + "'");
  }
  std::vector<std::pair<std::string, ExpandedLabel>> rows(labels.begin(),
                                                          labels.end());
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  outf << "url,label\n";
  for (const auto& [url, label] : rows) {
    outf << url << ',' << to_code(label) << '\n';
  }
}

}  // namespace polarlens

/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "polarlens/agreement.hpp"
#include "polarlens/diversity.hpp"
#include "polarlens/extraction.hpp"
#include "polarlens/json.hpp"
#include "polarlens/logio.hpp"
#include "polarlens/mobility.hpp"
#include "polarlens/query_graph.hpp"
#include "polarlens/records.hpp"
#include "polarlens/report.hpp"
#include "polarlens/stance.hpp"
#include "polarlens/synth.hpp"
#include "polarlens/transition_matrix.hpp"
#include "polarlens/url.hpp"

namespace fs = std::filesystem;
using namespace polarlens;

namespace {

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cli: cannot create output directory " +
                             dir.string() + ": " + ec.message());
  }
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cli: cannot open " + path.string() +
                             " for writing");
  }
  f << text;
  if (!f) throw std::runtime_error("cli: failed writing " + path.string());
  std::cout << "wrote " << path.string() << '\n';
}

void write_json_file(const fs::path& path, const Json& j) {
  write_file(path, j.dump(2) + "\n");
}

template <typename Range>
void write_lines(const fs::path& path, const Range& lines) {
  std::string text;
  for (const auto& line : lines) {
    text += line;
    text += '\n';
  }
  write_file(path, text);
}

Dataset load_inputs(const std::string& logs, const std::string& queries,
                    const std::string& labels) {
  std::vector<std::string> warnings;
  fs::path v(logs), q(queries), l(labels);
  Dataset ds = load_dataset(v, queries.empty() ? nullptr : &q,
                            labels.empty() ? nullptr : &l, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  return ds;
}

std::vector<Tier> tiers_for(const std::string& flag) {
  if (flag == "high") return {Tier::High};
  if (flag == "expanded") return {Tier::Expanded};
  return {Tier::High, Tier::Expanded};
}

const char* tier_key(Tier t) { return t == Tier::High ? "high" : "expanded"; }

std::unordered_set<std::string> exclusion_set(const std::string& path) {
  std::unordered_set<std::string> out;
  if (path.empty()) return out;
  for (auto& url : load_url_list(path)) out.insert(std::move(url));
  return out;
}

// Propagation settings ride in the shared config JSON: advocacy sites
// keep their curated stance, forum domains take their dominant
// category, and the entropy threshold gates the rest.
PropagationConfig propagation_from_config(const std::string& path) {
  PropagationConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cli: cannot open config " + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::exception& e) {
    throw std::runtime_error("cli: config " + path + ": " + e.what());
  }
  if (j.contains("entropy_threshold")) {
    cfg.entropy_threshold = j.at("entropy_threshold").get<double>();
  }
  if (j.contains("forum_domains")) {
    for (const auto& d : j.at("forum_domains")) {
      cfg.forum_domains.push_back(
          registered_domain(normalize_url(d.get<std::string>())));
    }
  }
  if (j.contains("advocacy")) {
    for (const auto& entry : j.at("advocacy")) {
      std::string domain =
          registered_domain(normalize_url(entry.at("url").get<std::string>()));
      cfg.advocacy_domains[domain] =
          parse_label_code(entry.at("label").get<std::string>());
    }
  }
  return cfg;
}

// Applies advocacy/forum/entropy label roll-up and returns the dataset
// with the propagated map plus the resulting bare-domain labels.
std::pair<Dataset, std::map<std::string, std::string>> with_propagated_labels(
    Dataset ds, const PropagationConfig& pcfg) {
  auto stats = domain_diversity(ds.labels, {Tier::High, 1});
  ds.labels = propagate_domain_labels(ds.labels, stats, pcfg);
  std::map<std::string, std::string> bare;
  for (const auto& [key, label] : ds.labels) {
    if (key.find('/') == std::string::npos && key == registered_domain(key)) {
      bare.emplace(key, std::string(to_code(label)));
    }
  }
  return {std::move(ds), std::move(bare)};
}

Json matrix_node(const TransitionMatrix& m) {
  Json node;
  node["matrix"] = m.to_json();
  node["mobility"] = to_json(mobility_indices(m));
  node["distances"] = to_json(immobility_distances(m));
  return node;
}

// before/after restricted to users active in both periods, matching the
// common-user transition tables.
std::pair<Dataset, Dataset> common_split(const Dataset& ds, std::int64_t event) {
  auto [before, after] = split_by_event(ds, event);
  auto common = common_users(before, after);
  return {filter_users(before, common), filter_users(after, common)};
}

Json transitions_block(const Dataset& overall,
                       const std::optional<std::pair<Dataset, Dataset>>& split,
                       const std::vector<Tier>& tiers,
                       const TrailOptions& topts) {
  Json tr = Json::object();
  auto add_scope = [&](const char* name, const Dataset& ds) {
    Json node = Json::object();
    for (Tier t : tiers) node[tier_key(t)] = matrix_node(build_transition_matrix(ds, t, topts));
    tr[name] = std::move(node);
  };
  add_scope("overall", overall);
  if (split) {
    add_scope("before", split->first);
    add_scope("after", split->second);
  }
  return tr;
}

Json mediators_block(const Dataset& overall,
                     const std::optional<std::pair<Dataset, Dataset>>& split,
                     const TrailOptions& topts) {
  Json med = Json::object();
  med["overall"] = to_json(mediator_analysis(overall, topts));
  if (split) {
    med["before"] = to_json(mediator_analysis(split->first, topts));
    med["after"] = to_json(mediator_analysis(split->second, topts));
  }
  return med;
}

Json ranked_json(const std::vector<std::pair<std::string, std::size_t>>& ranked,
                 std::size_t limit = 0) {
  auto arr = Json::array();
  for (const auto& [query, count] : ranked) {
    if (limit != 0 && arr.size() >= limit) break;
    arr.push_back({query, count});
  }
  return arr;
}

struct ExtractArgs {
  std::string logs, queries, config, out;
  std::int64_t event_time = 0;
  bool has_event = false;
};

void run_extract(const ExtractArgs& a) {
  auto dir = prepare_out_dir(a.out);
  Dataset ds = load_inputs(a.logs, a.queries, "");
  auto cfg = ExtractionConfig::from_json_file(a.config);

  auto seeds = find_seed_queries(ds.queries, cfg);
  auto graph = QueryClickGraph::build(ds.queries, cfg.url_options);
  std::vector<std::string> warnings;
  auto expanded = expand_queries(graph, seeds, cfg, &warnings);
  auto relevant = filter_queries(expanded, cfg);
  auto urls = extract_relevant_urls(ds, relevant, cfg);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  Json ex;
  ex["seed_queries"] = seeds;
  ex["relevant_queries"] = relevant;
  ex["relevant_urls"] = urls;
  Json ranked;
  ranked["overall"] = ranked_json(rank_queries(ds.queries, relevant));
  if (a.has_event) {
    auto [before, after] = split_by_event(ds, a.event_time);
    ranked["before"] = ranked_json(rank_queries(before.queries, relevant));
    ranked["after"] = ranked_json(rank_queries(after.queries, relevant));
  }
  ex["ranked"] = std::move(ranked);
  Json walk;
  walk["click_count"] =
      graph.walk_probabilities(seeds, QueryClickGraph::Weighting::ClickCount);
  walk["uniform"] =
      graph.walk_probabilities(seeds, QueryClickGraph::Weighting::Uniform);
  ex["walk_probabilities"] = std::move(walk);
  ex["warnings"] = warnings;

  write_json_file(dir / "extract.json", Json{{"extraction", std::move(ex)}});
  write_lines(dir / "relevant_queries.txt", relevant);
  write_lines(dir / "relevant_urls.txt", urls);
}

struct AgreeArgs {
  std::string judgments, out;
};

void run_agree(const AgreeArgs& a) {
  auto dir = prepare_out_dir(a.out);
  auto judgments = load_judgment_csv(a.judgments);
  Json ag;
  ag["high"] = to_json(agreement_report(judgments, Tier::High));
  ag["expanded"] = to_json(agreement_report(judgments, Tier::Expanded));
  Json bundle{{"agreement", std::move(ag)}};
  write_json_file(dir / "agreement.json", bundle);
  std::cout << render_text_report(bundle);
}

struct DiversityArgs {
  std::string logs, labels, config, exclude, out;
  std::string tier = "high";
  std::int64_t event_time = 0;
  bool has_event = false;
};

void run_diversity(const DiversityArgs& a) {
  auto dir = prepare_out_dir(a.out);
  Tier tier = a.tier == "expanded" ? Tier::Expanded : Tier::High;
  Dataset raw = load_inputs(a.logs, "", a.labels);
  auto domain_stats = domain_diversity(raw.labels, {tier, 1});
  auto [ds, bare_labels] =
      with_propagated_labels(std::move(raw), propagation_from_config(a.config));
  auto user_stats = user_diversity(ds, {3, tier, false});

  Json d;
  d["domains"] = to_json(domain_stats);
  d["users"] = to_json(user_stats);
  Json agg;
  agg["domains"] = entropy_aggregate_json(domain_stats);
  agg["users"] = entropy_aggregate_json(user_stats);
  d["aggregates"] = std::move(agg);
  d["domain_labels"] = bare_labels;
  Json render_d = d.at("aggregates");
  if (a.has_event) {
    auto [before, after] = common_split(ds, a.event_time);
    DiversityChangeOptions opts{2, tier, exclusion_set(a.exclude)};
    auto change = to_json(diversity_change(before, after, opts));
    d["change"] = change;
    render_d["change"] = std::move(change);
  }
  write_json_file(dir / "diversity.json", Json{{"diversity", std::move(d)}});
  std::string text = render_text_report(Json{{"diversity", std::move(render_d)}});
  write_file(dir / "diversity.txt", text);
  std::cout << text;
}

struct TransitionsArgs {
  std::vector<std::string> matrices;
  std::string logs, labels, out;
  std::string tier = "both";
  std::int64_t event_time = 0;
  bool has_event = false;
  bool per_session = false;
};

void run_transitions(const TransitionsArgs& a) {
  auto dir = prepare_out_dir(a.out);
  Json tr = Json::object();
  if (!a.matrices.empty()) {
    for (const auto& path : a.matrices) {
      auto m = TransitionMatrix::from_csv_file(path);
      std::string scope = fs::path(path).stem().string();
      const char* key = tier_key(m.tier());
      if (tr.contains(scope) && tr.at(scope).contains(key)) {
        throw std::runtime_error("cli: duplicate matrix scope " + scope);
      }
      tr[scope][key] = matrix_node(m);
    }
  } else {
    if (a.logs.empty() || a.labels.empty()) {
      throw std::runtime_error(
          "cli: transitions needs --matrix fixtures or --logs with --labels");
    }
    Dataset ds = load_inputs(a.logs, "", a.labels);
    std::optional<std::pair<Dataset, Dataset>> split;
    if (a.has_event) split = common_split(ds, a.event_time);
    TrailOptions topts;
    topts.per_session = a.per_session;
    tr = transitions_block(ds, split, tiers_for(a.tier), topts);
  }
  Json bundle{{"transitions", std::move(tr)}};
  write_json_file(dir / "transitions.json", bundle);
  std::string text = render_text_report(bundle);
  write_file(dir / "transitions.txt", text);
  std::cout << text;
}

struct MediatorsArgs {
  std::string logs, labels, out;
  std::int64_t event_time = 0;
  bool has_event = false;
  bool per_session = false;
};

void run_mediators(const MediatorsArgs& a) {
  auto dir = prepare_out_dir(a.out);
  Dataset ds = load_inputs(a.logs, "", a.labels);
  std::optional<std::pair<Dataset, Dataset>> split;
  if (a.has_event) split = common_split(ds, a.event_time);
  TrailOptions topts;
  topts.per_session = a.per_session;
  Json bundle{{"mediators", mediators_block(ds, split, topts)}};
  write_json_file(dir / "mediators.json", bundle);
  std::string text = render_text_report(bundle);
  write_file(dir / "mediators.txt", text);
  std::cout << text;
}

struct SynthArgs {
  std::string config, out;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

void run_synth(const SynthArgs& a) {
  auto dir = prepare_out_dir(a.out);
  auto cfg = SynthConfig::from_json_file(a.config);
  if (a.has_seed) cfg.seed = a.seed;
  cfg.validate();
  auto out = generate_logs(cfg);
  save_visit_tsv(out.dataset.visits, dir / "visits.tsv");
  std::cout << "wrote " << (dir / "visits.tsv").string() << '\n';
  save_query_tsv(out.dataset.queries, dir / "queries.tsv");
  std::cout << "wrote " << (dir / "queries.tsv").string() << '\n';
  save_label_csv(out.dataset.labels, dir / "labels.csv");
  std::cout << "wrote " << (dir / "labels.csv").string() << '\n';
  write_json_file(dir / "bookkeeping.json", out.bookkeeping.to_json());
  auto s = out.bookkeeping.expected_summary();
  std::cout << "generated " << s.total_visits << " visits in " << s.sessions
            << " sessions for " << s.users << " users over "
            << s.unique_urls << " urls / " << s.unique_domains
            << " domains (seed " << cfg.seed << ")\n";
}

struct ReportArgs {
  std::string logs, queries, judgments, labels, config, exclude, out;
  std::string tier = "both";
  std::int64_t event_time = 0;
  bool has_event = false;
  bool per_session = false;
};

void run_report(const ReportArgs& a) {
  auto dir = prepare_out_dir(a.out);
  Dataset ds = load_inputs(a.logs, a.queries, a.labels);
  Json bundle = Json::object();

  // Corpus restriction: with an extraction config and a query log, the
  // visit set narrows to the relevant URLs before any measurement.
  Json top_queries;
  if (!a.config.empty() && !ds.queries.empty()) {
    auto cfg = ExtractionConfig::from_json_file(a.config);
    auto seeds = find_seed_queries(ds.queries, cfg);
    auto graph = QueryClickGraph::build(ds.queries, cfg.url_options);
    auto relevant = filter_queries(expand_queries(graph, seeds, cfg), cfg);
    auto urls = extract_relevant_urls(ds, relevant, cfg);
    std::erase_if(ds.visits, [&](const LogRecord& r) {
      return urls.count(normalize_url(r.url, cfg.url_options)) == 0;
    });
    top_queries = ranked_json(rank_queries(ds.queries, relevant), 15);
  }

  std::optional<std::pair<Dataset, Dataset>> raw_split;
  if (a.has_event) raw_split = split_by_event(ds, a.event_time);

  Json summaries;
  summaries["overall"] = to_json(summarize(ds));
  if (raw_split) {
    summaries["before"] = to_json(summarize(raw_split->first));
    summaries["after"] = to_json(summarize(raw_split->second));
  }
  bundle["dataset"] = std::move(summaries);

  if (!a.judgments.empty()) {
    auto judgments = load_judgment_csv(a.judgments);
    Json ag;
    ag["high"] = to_json(agreement_report(judgments, Tier::High));
    ag["expanded"] = to_json(agreement_report(judgments, Tier::Expanded));
    bundle["agreement"] = std::move(ag);
  }
  if (!top_queries.is_null()) bundle["top_queries"] = std::move(top_queries);

  auto domain_stats = domain_diversity(ds.labels, {Tier::High, 1});
  Dataset labeled =
      with_propagated_labels(std::move(ds), propagation_from_config(a.config))
          .first;

  std::optional<std::pair<Dataset, Dataset>> split;
  if (a.has_event) split = common_split(labeled, a.event_time);
  TrailOptions topts;
  topts.per_session = a.per_session;
  bundle["transitions"] =
      transitions_block(labeled, split, tiers_for(a.tier), topts);
  bundle["mediators"] = mediators_block(labeled, split, topts);

  Json diversity;
  diversity["domains"] = entropy_aggregate_json(domain_stats);
  diversity["users"] =
      entropy_aggregate_json(user_diversity(labeled, {3, Tier::High, false}));
  if (split) {
    DiversityChangeOptions opts{2, Tier::High, exclusion_set(a.exclude)};
    diversity["change"] =
        to_json(diversity_change(split->first, split->second, opts));
  }
  bundle["diversity"] = std::move(diversity);

  write_json_file(dir / "report.json", bundle);
  std::string text = render_text_report(bundle);
  write_file(dir / "report.txt", text);
  std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polarlens: stance-labeled browsing-log analytics"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* cmd_ex = app.add_subcommand(
      "extract", "Build the relevant query and URL sets from a query log");
  cmd_ex->add_option("--logs", ex.logs, "visit TSV")->required()
      ->check(CLI::ExistingFile);
  cmd_ex->add_option("--queries", ex.queries, "query TSV")->required()
      ->check(CLI::ExistingFile);
  cmd_ex->add_option("--config", ex.config, "extraction config JSON")
      ->required()->check(CLI::ExistingFile);
  auto* ex_event = cmd_ex->add_option("--event-time", ex.event_time,
                                      "epoch seconds splitting before/after");
  cmd_ex->add_option("--out", ex.out, "output directory")->required();
  cmd_ex->callback([&] {
    ex.has_event = ex_event->count() > 0;
    run_extract(ex);
  });

  AgreeArgs ag;
  auto* cmd_ag = app.add_subcommand(
      "agree", "Inter-rater agreement from a two-rater judgment CSV");
  cmd_ag->add_option("--judgments", ag.judgments, "url,rater,label CSV")
      ->required()->check(CLI::ExistingFile);
  cmd_ag->add_option("--out", ag.out, "output directory")->required();
  cmd_ag->callback([&] { run_agree(ag); });

  DiversityArgs dv;
  auto* cmd_dv = app.add_subcommand(
      "diversity", "Domain and user label-entropy statistics");
  cmd_dv->add_option("--logs", dv.logs, "visit TSV")->required()
      ->check(CLI::ExistingFile);
  cmd_dv->add_option("--labels", dv.labels, "url,label CSV")->required()
      ->check(CLI::ExistingFile);
  cmd_dv->add_option("--config", dv.config, "propagation config JSON")
      ->check(CLI::ExistingFile);
  cmd_dv->add_option("--tier", dv.tier, "label tier")
      ->check(CLI::IsMember({"high", "expanded"}));
  auto* dv_event = cmd_dv->add_option("--event-time", dv.event_time,
                                      "epoch seconds splitting before/after");
  cmd_dv->add_option("--exclude-urls", dv.exclude,
                     "file of URLs dropped from the change analysis")
      ->check(CLI::ExistingFile);
  cmd_dv->add_option("--out", dv.out, "output directory")->required();
  cmd_dv->callback([&] {
    dv.has_event = dv_event->count() > 0;
    run_diversity(dv);
  });

  TransitionsArgs tr;
  auto* cmd_tr = app.add_subcommand(
      "transitions", "Stance transition matrices, mobility, and distances");
  cmd_tr->add_option("--matrix", tr.matrices,
                     "transition matrix CSV (repeatable; bypasses logs)")
      ->check(CLI::ExistingFile);
  cmd_tr->add_option("--logs", tr.logs, "visit TSV")->check(CLI::ExistingFile);
  cmd_tr->add_option("--labels", tr.labels, "url,label CSV")
      ->check(CLI::ExistingFile);
  cmd_tr->add_option("--tier", tr.tier, "label tier")
      ->check(CLI::IsMember({"high", "expanded", "both"}));
  auto* tr_event = cmd_tr->add_option("--event-time", tr.event_time,
                                      "epoch seconds splitting before/after");
  cmd_tr->add_flag("--per-session", tr.per_session,
                   "restart trails at session boundaries");
  cmd_tr->add_option("--out", tr.out, "output directory")->required();
  cmd_tr->callback([&] {
    tr.has_event = tr_event->count() > 0;
    run_transitions(tr);
  });

  MediatorsArgs md;
  auto* cmd_md = app.add_subcommand(
      "mediators", "Direct vs balanced-mediated cross-stance transitions");
  cmd_md->add_option("--logs", md.logs, "visit TSV")->required()
      ->check(CLI::ExistingFile);
  cmd_md->add_option("--labels", md.labels, "url,label CSV")->required()
      ->check(CLI::ExistingFile);
  auto* md_event = cmd_md->add_option("--event-time", md.event_time,
                                      "epoch seconds splitting before/after");
  cmd_md->add_flag("--per-session", md.per_session,
                   "restart trails at session boundaries");
  cmd_md->add_option("--out", md.out, "output directory")->required();
  cmd_md->callback([&] {
    md.has_event = md_event->count() > 0;
    run_mediators(md);
  });

  SynthArgs sy;
  auto* cmd_sy = app.add_subcommand(
      "synth", "Generate a synthetic labeled browsing log from a planted chain");
  cmd_sy->add_option("--config", sy.config, "generator config JSON")
      ->required()->check(CLI::ExistingFile);
  auto* sy_seed = cmd_sy->add_option("--seed", sy.seed, "RNG seed override");
  cmd_sy->add_option("--out", sy.out, "output directory")->required();
  cmd_sy->callback([&] {
    sy.has_seed = sy_seed->count() > 0;
    run_synth(sy);
  });

  ReportArgs rp;
  auto* cmd_rp = app.add_subcommand(
      "report", "Bundle every available stage into one JSON + text report");
  cmd_rp->add_option("--logs", rp.logs, "visit TSV")->required()
      ->check(CLI::ExistingFile);
  cmd_rp->add_option("--labels", rp.labels, "url,label CSV")->required()
      ->check(CLI::ExistingFile);
  cmd_rp->add_option("--queries", rp.queries, "query TSV")
      ->check(CLI::ExistingFile);
  cmd_rp->add_option("--judgments", rp.judgments, "url,rater,label CSV")
      ->check(CLI::ExistingFile);
  cmd_rp->add_option("--config", rp.config,
                     "extraction + propagation config JSON")
      ->check(CLI::ExistingFile);
  cmd_rp->add_option("--tier", rp.tier, "transition tier selection")
      ->check(CLI::IsMember({"high", "expanded", "both"}));
  auto* rp_event = cmd_rp->add_option("--event-time", rp.event_time,
                                      "epoch seconds splitting before/after");
  cmd_rp->add_option("--exclude-urls", rp.exclude,
                     "file of URLs dropped from the change analysis")
      ->check(CLI::ExistingFile);
  cmd_rp->add_flag("--per-session", rp.per_session,
                   "restart trails at session boundaries");
  cmd_rp->add_option("--out", rp.out, "output directory")->required();
  cmd_rp->callback([&] {
    rp.has_event = rp_event->count() > 0;
    run_report(rp);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "polarlens: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <string>
#include <vector>

#include "polarlens/json.hpp"

#include "polarlens/agreement.hpp"
#include "polarlens/diversity.hpp"
#include "polarlens/mobility.hpp"
#include "polarlens/records.hpp"
#include "polarlens/synth.hpp"
#include "polarlens/transition_matrix.hpp"

namespace polarlens {

// JSON shapes for every report object. Numbers are emitted at full
// precision; the text renderer applies the 2-decimal percent /
// 4-decimal index formatting.
Json to_json(const DatasetSummary& s);
Json to_json(const AgreementReport& r);
Json to_json(const MobilityReport& r);
Json to_json(const DistanceReport& r);
Json to_json(const MediatorReport& r);
Json to_json(const EntropyStat& s);
Json to_json(const std::vector<EntropyStat>& stats);
Json to_json(const DiversityChangeReport& r);

DatasetSummary dataset_summary_from_json(const Json& j);
AgreementReport agreement_from_json(const Json& j);
MobilityReport mobility_from_json(const Json& j);
DistanceReport distances_from_json(const Json& j);
MediatorReport mediators_from_json(const Json& j);
std::vector<EntropyStat> entropy_stats_from_json(const Json& j);
DiversityChangeReport diversity_change_from_json(const Json& j);

// Count / share-at-zero / mean / median over a diversity batch.
Json entropy_aggregate_json(const std::vector<EntropyStat>& stats);

// Fixed-precision decimal string (used by the text renderer; exposed for
// tests). Not locale dependent.
std::string format_fixed(double value, int decimals);

// Plain-text rendering of a bundled report (the `report` subcommand's
// JSON layout): dataset summary, agreement, top queries, matrices,
// mobility indices, distances, mediators, diversity blocks. Percent
// cells use 2 decimals, index values 4.
std::string render_text_report(const Json& bundle);

}  // namespace polarlens

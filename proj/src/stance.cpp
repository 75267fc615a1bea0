/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/stance.hpp"

namespace polarlens {

namespace {

constexpr std::array<ExpandedLabel, kExpandedStates> kExpandedOrder = {
    ExpandedLabel::ExtremeControl,  ExpandedLabel::ModerateControl,
    ExpandedLabel::HighlyBalanced,  ExpandedLabel::PurelyFactual,
    ExpandedLabel::ModerateRights,  ExpandedLabel::ExtremeRights,
};

constexpr std::array<HighLabel, kHighStates> kHighOrder = {
    HighLabel::GunControl,
    HighLabel::Balanced,
    HighLabel::GunRights,
};

}  // namespace

std::string_view to_code(ExpandedLabel e) {
  switch (e) {
    case ExpandedLabel::ExtremeControl: return "EC";
    case ExpandedLabel::ModerateControl: return "MC";
    case ExpandedLabel::HighlyBalanced: return "HB";
    case ExpandedLabel::PurelyFactual: return "PF";
    case ExpandedLabel::ModerateRights: return "MR";
    case ExpandedLabel::ExtremeRights: return "ER";
    case ExpandedLabel::OffTopic: return "OFF";
    case ExpandedLabel::NotAccessible: return "NA";
  }
  throw std::invalid_argument("stance: unknown expanded label value");
}

std::string_view to_code(HighLabel h) {
  switch (h) {
    case HighLabel::GunControl: return "GC";
    case HighLabel::Balanced: return "BF";
    case HighLabel::GunRights: return "GR";
    case HighLabel::OffTopic: return "OFF";
    case HighLabel::NotAccessible: return "NA";
  }
  throw std::invalid_argument("stance: unknown high-level label value");
}

ExpandedLabel parse_label_code(std::string_view code) {
  if (code == "EC") return ExpandedLabel::ExtremeControl;
  if (code == "MC") return ExpandedLabel::ModerateControl;
  if (code == "HB") return ExpandedLabel::HighlyBalanced;
  if (code == "PF") return ExpandedLabel::PurelyFactual;
  if (code == "MR") return ExpandedLabel::ModerateRights;
  if (code == "ER") return ExpandedLabel::ExtremeRights;
  if (code == "OFF") return ExpandedLabel::OffTopic;
  if (code == "NA") return ExpandedLabel::NotAccessible;
  // Curated lists sometimes carry only the coarse stance; pick the
  // moderate/factual member so the fold recovers the intended group.
  if (code == "GC") return ExpandedLabel::ModerateControl;
  if (code == "BF") return ExpandedLabel::PurelyFactual;
  if (code == "GR") return ExpandedLabel::ModerateRights;
  throw std::invalid_argument("stance: unknown label code '" +
                              std::string(code) + "'");
}

std::size_t StateOrdering::index_of(ExpandedLabel e) const {
  if (!is_stance(e)) {
    throw std::invalid_argument(
        "stance: OffTopic/NotAccessible labels have no state index");
  }
  if (tier == Tier::High) return index_of(fold(e));
  for (std::size_t i = 0; i < kExpandedOrder.size(); ++i) {
    if (kExpandedOrder[i] == e) return i;
  }
  throw std::invalid_argument("stance: unknown expanded label value");
}

std::size_t StateOrdering::index_of(HighLabel h) const {
  if (!is_stance(h)) {
    throw std::invalid_argument(
        "stance: OffTopic/NotAccessible labels have no state index");
  }
  if (tier == Tier::Expanded) {
    throw std::invalid_argument(
        "stance: high-level label has no expanded-tier index");
  }
  for (std::size_t i = 0; i < kHighOrder.size(); ++i) {
    if (kHighOrder[i] == h) return i;
  }
  throw std::invalid_argument("stance: unknown high-level label value");
}

std::string_view StateOrdering::code_at(std::size_t i) const {
  if (i >= size()) {
    throw std::out_of_range("stance: state index out of range");
  }
  return tier == Tier::High ? to_code(kHighOrder[i])
                            : to_code(kExpandedOrder[i]);
}

}  // namespace polarlens

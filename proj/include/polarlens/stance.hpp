/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polarlens {

// Expanded stance categories, ordered from the control-leaning end of the
// spectrum to the rights-leaning end. OffTopic and NotAccessible are
// annotation-only labels: they never enter entropy or transition counts.
enum class ExpandedLabel : unsigned char {
  ExtremeControl,    // EC
  ModerateControl,   // MC
  HighlyBalanced,    // HB
  PurelyFactual,     // PF
  ModerateRights,    // MR
  ExtremeRights,     // ER
  OffTopic,          // OFF
  NotAccessible,     // NA
};

// High-level stance groups the expanded categories fold into.
enum class HighLabel : unsigned char {
  GunControl,    // GC <- {EC, MC}
  Balanced,      // BF <- {HB, PF}
  GunRights,     // GR <- {MR, ER}
  OffTopic,
  NotAccessible,
};

enum class Tier : unsigned char { High, Expanded };

constexpr std::size_t kHighStates = 3;
constexpr std::size_t kExpandedStates = 6;

constexpr HighLabel fold(ExpandedLabel e) {
  switch (e) {
    case ExpandedLabel::ExtremeControl:
    case ExpandedLabel::ModerateControl:
      return HighLabel::GunControl;
    case ExpandedLabel::HighlyBalanced:
    case ExpandedLabel::PurelyFactual:
      return HighLabel::Balanced;
    case ExpandedLabel::ModerateRights:
    case ExpandedLabel::ExtremeRights:
      return HighLabel::GunRights;
    case ExpandedLabel::OffTopic:
      return HighLabel::OffTopic;
    case ExpandedLabel::NotAccessible:
      return HighLabel::NotAccessible;
  }
  throw std::invalid_argument("stance: unknown expanded label value");
}

// True for the six stance categories; false for OffTopic/NotAccessible.
constexpr bool is_stance(ExpandedLabel e) {
  return e != ExpandedLabel::OffTopic && e != ExpandedLabel::NotAccessible;
}

constexpr bool is_stance(HighLabel h) {
  return h != HighLabel::OffTopic && h != HighLabel::NotAccessible;
}

std::string_view to_code(ExpandedLabel e);
std::string_view to_code(HighLabel h);

// Parses the two-letter annotation codes (EC, MC, HB, PF, MR, ER, OFF, NA).
// High-level codes (GC, BF, GR) are also accepted and mapped to a
// representative expanded member so curated high-level label files load.
// Throws std::invalid_argument on anything else.
ExpandedLabel parse_label_code(std::string_view code);

// Fixed state ordering of a transition matrix / histogram at a tier:
// expanded [EC, MC, HB, PF, MR, ER], high-level [GC, BF, GR]. State 0 is
// the most control-leaning state, the last the most rights-leaning.
struct StateOrdering {
  Tier tier = Tier::High;

  constexpr std::size_t size() const {
    return tier == Tier::High ? kHighStates : kExpandedStates;
  }

  // 0-based row/column index of a stance label; throws on OffTopic/NA.
  std::size_t index_of(ExpandedLabel e) const;
  std::size_t index_of(HighLabel h) const;

  // Code of the state at a 0-based index ("GC", "ER", ...).
  std::string_view code_at(std::size_t i) const;
};

}  // namespace polarlens

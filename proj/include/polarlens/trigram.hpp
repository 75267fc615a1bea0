/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <string_view>

namespace polarlens {

// Cosine similarity between the character-trigram count vectors of two
// strings. Trigrams are taken with a sliding window over the raw bytes,
// spaces included ("gun c" -> "gun", "un ", "n c"). Returns a value in
// [0, 1]; strings shorter than three characters have no trigrams and
// compare as 0 to everything.
double trigram_cosine(std::string_view a, std::string_view b);

}  // namespace polarlens

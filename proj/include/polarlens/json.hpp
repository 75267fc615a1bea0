/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <json.hpp>

namespace polarlens {

// Report JSON preserves insertion order, which keeps emitted files
// stable across runs and lets renderers control section order.
using Json = nlohmann::ordered_json;

}  // namespace polarlens

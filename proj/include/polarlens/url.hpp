/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace polarlens {

// Query-parameter keys dropped during normalization. Keys are matched
// case-insensitively; prefixes match any key starting with them.
struct UrlNormalizeOptions {
  std::vector<std::string> drop_param_keys = {"sessionid", "sid", "userid",
                                              "uid", "print"};
  std::vector<std::string> drop_param_prefixes = {"utm_"};
};

// Canonicalizes a URL for identity comparison:
//   - strips scheme, fragment, userinfo, and trailing slashes
//   - lowercases the host and strips leading www. / m. / mobile. labels
//     (repeatedly, but never down to a bare public suffix)
//   - drops session/user/print/utm_* query parameters and sorts the rest
//     by key
// The result has no scheme ("example.com/path?a=1"). Inputs that do not
// look like URLs (empty host, whitespace or control characters in the
// host) are returned as a trimmed, lowercased opaque string so records
// still join consistently; *parsed_ok reports which branch was taken.
// Idempotent: normalize(normalize(x)) == normalize(x).
std::string normalize_url(std::string_view raw, const UrlNormalizeOptions& opts,
                          bool* parsed_ok = nullptr);
std::string normalize_url(std::string_view raw);

// Host part of a normalized URL (everything before the first '/' or '?'),
// without the port.
std::string host_of(std::string_view normalized_url);

// Registered domain of a host: the public suffix plus one label
// ("news.example.co.uk" -> "example.co.uk"). Uses a built-in table of
// common two-part suffixes; IPv4 literals are returned whole. Accepts a
// full normalized URL too.
std::string registered_domain(std::string_view host_or_url);

}  // namespace polarlens

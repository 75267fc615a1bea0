/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/url.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace polarlens {

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool valid_host(std::string_view host) {
  if (host.empty()) return false;
  for (unsigned char c : host) {
    bool ok = std::isalnum(c) || c == '.' || c == '-' || c == '_' ||
              c == ':' || c == '[' || c == ']';
    if (!ok) return false;
  }
  return true;
}

// Strips leading www. / m. / mobile. labels. Looped so stacked prefixes
// ("www.m.site.com") reduce in one normalization pass, which keeps the
// whole transform idempotent; the dot guard keeps real domains like
// "m.com" intact.
void strip_mobile_prefixes(std::string& host) {
  static constexpr std::array<std::string_view, 3> kPrefixes = {
      "www.", "m.", "mobile."};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::string_view p : kPrefixes) {
      if (host.size() > p.size() && host.compare(0, p.size(), p) == 0 &&
          host.find('.', p.size()) != std::string::npos) {
        host.erase(0, p.size());
        changed = true;
      }
    }
  }
}

bool key_is_dropped(std::string_view key, const UrlNormalizeOptions& opts) {
  std::string k = ascii_lower(key);
  for (const auto& drop : opts.drop_param_keys) {
    if (k == drop) return true;
  }
  for (const auto& prefix : opts.drop_param_prefixes) {
    if (k.size() >= prefix.size() && k.compare(0, prefix.size(), prefix) == 0) {
      return true;
    }
  }
  return false;
}

// Two-part public suffixes under which a registered domain needs three
// labels. A short built-in list covers the common country-code cases.
const std::unordered_set<std::string_view>& two_part_suffixes() {
  static const std::unordered_set<std::string_view> kSet = {
      "co.uk", "ac.uk", "gov.uk", "org.uk", "me.uk", "net.uk",
      "co.jp", "ne.jp", "or.jp", "ac.jp",
      "com.au", "net.au", "org.au", "edu.au", "gov.au",
      "co.nz", "net.nz", "org.nz",
      "co.in", "net.in", "org.in",
      "co.za", "com.br", "net.br", "org.br", "com.mx",
      "com.cn", "net.cn", "org.cn", "com.tw", "com.hk",
      "com.sg", "com.my", "co.kr", "or.kr", "com.ar", "com.tr",
  };
  return kSet;
}

bool is_ipv4(std::string_view host) {
  bool saw_digit = false;
  for (unsigned char c : host) {
    if (std::isdigit(c)) {
      saw_digit = true;
    } else if (c != '.') {
      return false;
    }
  }
  return saw_digit;
}

}  // namespace

std::string normalize_url(std::string_view raw, const UrlNormalizeOptions& opts,
                          bool* parsed_ok) {
  if (parsed_ok != nullptr) *parsed_ok = true;
  std::string_view s = trim(raw);

  // Fragments never affect page identity.
  if (auto hash = s.find('#'); hash != std::string_view::npos) {
    s = s.substr(0, hash);
  }

  // Scheme.
  if (auto sep = s.find("://"); sep != std::string_view::npos) {
    bool scheme_ok = sep > 0 && std::isalpha(static_cast<unsigned char>(s[0]));
    for (std::size_t i = 1; scheme_ok && i < sep; ++i) {
      unsigned char c = s[i];
      scheme_ok = std::isalnum(c) || c == '+' || c == '-' || c == '.';
    }
    if (scheme_ok) s.remove_prefix(sep + 3);
  }

  auto path_start = s.find_first_of("/?");
  std::string_view authority =
      path_start == std::string_view::npos ? s : s.substr(0, path_start);
  std::string_view rest =
      path_start == std::string_view::npos ? std::string_view{} : s.substr(path_start);

  // Userinfo.
  if (auto at = authority.rfind('@'); at != std::string_view::npos) {
    authority.remove_prefix(at + 1);
  }

  if (!valid_host(authority)) {
    if (parsed_ok != nullptr) *parsed_ok = false;
    return ascii_lower(trim(raw));
  }

  std::string host = ascii_lower(authority);
  strip_mobile_prefixes(host);

  std::string_view path = rest;
  std::string_view query;
  if (auto q = rest.find('?'); q != std::string_view::npos) {
    path = rest.substr(0, q);
    query = rest.substr(q + 1);
  }

  std::vector<std::string> params;
  if (!query.empty()) {
    std::size_t pos = 0;
    while (pos <= query.size()) {
      auto amp = query.find('&', pos);
      std::string_view part = query.substr(
          pos, amp == std::string_view::npos ? std::string_view::npos : amp - pos);
      if (!part.empty()) {
        std::string_view key = part.substr(0, part.find('='));
        if (!key_is_dropped(key, opts)) params.emplace_back(part);
      }
      if (amp == std::string_view::npos) break;
      pos = amp + 1;
    }
    std::sort(params.begin(), params.end());
  }

  std::string out = host;
  out.append(path);
  while (!out.empty() && out.back() == '/') out.pop_back();
  for (std::size_t i = 0; i < params.size(); ++i) {
    out += i == 0 ? '?' : '&';
    out += params[i];
  }
  return out;
}

std::string normalize_url(std::string_view raw) {
  static const UrlNormalizeOptions kDefault;
  return normalize_url(raw, kDefault, nullptr);
}

std::string host_of(std::string_view normalized_url) {
  auto end = normalized_url.find_first_of("/?");
  std::string_view host = normalized_url.substr(0, end);
  if (auto colon = host.rfind(':'); colon != std::string_view::npos &&
                                    host.find(']') == std::string_view::npos) {
    host = host.substr(0, colon);
  }
  return std::string(host);
}

std::string registered_domain(std::string_view host_or_url) {
  std::string host = host_of(host_or_url);
  strip_mobile_prefixes(host);
  if (is_ipv4(host)) return host;

  std::vector<std::string_view> labels;
  std::string_view h = host;
  std::size_t pos = 0;
  while (pos <= h.size()) {
    auto dot = h.find('.', pos);
    labels.push_back(h.substr(
        pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos));
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  if (labels.size() <= 2) return host;

  std::string last_two = std::string(labels[labels.size() - 2]) + "." +
                         std::string(labels.back());
  std::size_t keep = two_part_suffixes().count(last_two) != 0 ? 3 : 2;
  std::string out;
  for (std::size_t i = labels.size() - keep; i < labels.size(); ++i) {
    if (!out.empty()) out += '.';
    out += labels[i];
  }
  return out;
}

}  // namespace polarlens

/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/url.hpp"

#include <random>
#include <string>
#include <vector>

#include <doctest.h>

using namespace polarlens;

TEST_SUITE("url") {

TEST_CASE("scheme, fragment, userinfo, and trailing slashes are stripped") {
  CHECK(normalize_url("http://example.com/path/") == "example.com/path");
  CHECK(normalize_url("https://example.com/path#frag") == "example.com/path");
  CHECK(normalize_url("http://user:pw@example.com/x") == "example.com/x");
  CHECK(normalize_url("HTTP://EXAMPLE.COM/Path") == "example.com/Path");
  CHECK(normalize_url("example.com") == "example.com");
  CHECK(normalize_url("http://example.com///") == "example.com");
}

TEST_CASE("mobile prefixes strip repeatedly but never to a bare suffix") {
  CHECK(normalize_url("http://www.example.com/a") == "example.com/a");
  CHECK(normalize_url("http://m.example.com/a") == "example.com/a");
  CHECK(normalize_url("http://mobile.example.com/a") == "example.com/a");
  CHECK(normalize_url("http://www.m.example.com/a") == "example.com/a");
  // "www.com" would lose its last dot; the label stays.
  CHECK(normalize_url("http://www.com/a") == "www.com/a");
  CHECK(normalize_url("http://m.com") == "m.com");
}

TEST_CASE("session and tracking parameters drop, the rest sort by key") {
  CHECK(normalize_url("http://e.com/p?b=2&a=1") == "e.com/p?a=1&b=2");
  CHECK(normalize_url("http://e.com/p?sessionid=77&a=1") == "e.com/p?a=1");
  CHECK(normalize_url("http://e.com/p?SID=9&a=1") == "e.com/p?a=1");
  CHECK(normalize_url("http://e.com/p?utm_source=x&utm_medium=y&a=1") ==
        "e.com/p?a=1");
  CHECK(normalize_url("http://e.com/p?userid=5&uid=6&print=1") == "e.com/p");
  CHECK(normalize_url("http://e.com/p/?b=2&a=1") == "e.com/p?a=1&b=2");
}

TEST_CASE("non-URL input falls back to a trimmed lowercase opaque string") {
  bool ok = true;
  CHECK(normalize_url("  Not A Url  ", {}, &ok) == "not a url");
  CHECK_FALSE(ok);
  CHECK(normalize_url("http://example.com/x", {}, &ok) == "example.com/x");
  CHECK(ok);
  CHECK(normalize_url("") == "");
}

TEST_CASE("normalization is idempotent on generated inputs") {
  const std::vector<std::string> schemes = {"", "http://", "https://",
                                            "HTTP://", "ftp://"};
  const std::vector<std::string> hosts = {
      "example.com",      "WWW.Example.COM", "m.mobile.example.co.uk",
      "www.com",          "192.168.0.1",     "site.example:8080",
      "a_b.example",      "not a host",      "www.m.news.example.org"};
  const std::vector<std::string> paths = {"",      "/",        "/a/b/",
                                          "/Path", "/x//y///", "/p?b=2&a=1",
                                          "/p?sessionid=1&z=9&utm_x=2#frag",
                                          "/p?only=1&UID=2"};
  for (const auto& s : schemes) {
    for (const auto& h : hosts) {
      for (const auto& p : paths) {
        std::string raw = s + h + p;
        std::string once = normalize_url(raw);
        CHECK_MESSAGE(normalize_url(once) == once, "raw: ", raw);
      }
    }
  }
}

TEST_CASE("host_of splits at path or query and removes the port") {
  CHECK(host_of("example.com/path?q=1") == "example.com");
  CHECK(host_of("example.com:8080/path") == "example.com");
  CHECK(host_of("example.com") == "example.com");
  CHECK(host_of("example.com?q=1") == "example.com");
}

TEST_CASE("registered domain keeps the suffix plus one label") {
  CHECK(registered_domain("news.example.co.uk") == "example.co.uk");
  CHECK(registered_domain("example.com") == "example.com");
  CHECK(registered_domain("a.b.c.example.com") == "example.com");
  CHECK(registered_domain("answers.yahoo.com") == "yahoo.com");
  CHECK(registered_domain("192.168.0.1") == "192.168.0.1");
  CHECK(registered_domain("localhost") == "localhost");
  CHECK(registered_domain("deep.sub.example.com.au/path?x=1") ==
        "example.com.au");
}

}  // TEST_SUITE

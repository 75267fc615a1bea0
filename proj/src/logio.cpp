/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/logio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

#include "polarlens/url.hpp"

namespace polarlens {

namespace {

std::string location(const std::filesystem::path& path, std::size_t line_no) {
  return path.filename().string() + ":" + std::to_string(line_no);
}

std::string trim_copy(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

std::string lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("io: cannot open '" + path.string() + "'");
  }
  return in;
}

// getline, tolerating a CRLF file that slipped through an upload.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> split_tsv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

std::int64_t parse_timestamp(const std::string& field,
                             const std::filesystem::path& path,
                             std::size_t line_no) {
  std::int64_t ts = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), ts);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("io: " + location(path, line_no) +
                     ": timestamp is not an integer: '" + field + "'");
  }
  if (ts <= 0) {
    throw ParseError("io: " + location(path, line_no) +
                     ": timestamp must be positive");
  }
  return ts;
}

void require_nonempty(const std::string& field, const char* name,
                      const std::filesystem::path& path, std::size_t line_no) {
  if (field.empty()) {
    throw ParseError("io: " + location(path, line_no) + ": empty " +
                     std::string(name));
  }
}

void warn_if_empty(std::size_t n, const std::filesystem::path& path,
                   std::vector<std::string>* warnings) {
  if (n == 0 && warnings != nullptr) {
    warnings->push_back("io: '" + path.string() + "' contains no records");
  }
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<LogRecord> load_visit_tsv(const std::filesystem::path& path,
                                      std::vector<std::string>* warnings) {
  auto in = open_or_throw(path);
  std::vector<LogRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_tsv(line);
    if (fields.size() != 4) {
      throw ParseError("io: " + location(path, line_no) + ": expected 4 " +
                       "tab-separated fields, got " +
                       std::to_string(fields.size()));
    }
    require_nonempty(fields[0], "user_id", path, line_no);
    require_nonempty(fields[1], "session_id", path, line_no);
    require_nonempty(fields[2], "url", path, line_no);
    records.push_back({std::move(fields[0]), std::move(fields[1]),
                       std::move(fields[2]),
                       parse_timestamp(fields[3], path, line_no)});
  }
  warn_if_empty(records.size(), path, warnings);
  return records;
}

std::vector<QueryRecord> load_query_tsv(const std::filesystem::path& path,
                                        std::vector<std::string>* warnings) {
  auto in = open_or_throw(path);
  std::vector<QueryRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_tsv(line);
    if (fields.size() != 5) {
      throw ParseError("io: " + location(path, line_no) + ": expected 5 " +
                       "tab-separated fields, got " +
                       std::to_string(fields.size()));
    }
    require_nonempty(fields[0], "user_id", path, line_no);
    require_nonempty(fields[1], "session_id", path, line_no);
    std::string query = lower_copy(trim_copy(fields[2]));
    require_nonempty(query, "query", path, line_no);
    records.push_back({std::move(fields[0]), std::move(fields[1]),
                       std::move(query), std::move(fields[3]),
                       parse_timestamp(fields[4], path, line_no)});
  }
  warn_if_empty(records.size(), path, warnings);
  return records;
}

LabelMap load_label_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  LabelMap labels;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw ParseError("io: " + location(path, line_no) +
                       ": expected 'url,label'");
    }
    std::string key = trim_copy(fields[0]);
    std::string code = trim_copy(fields[1]);
    if (line_no == 1 && lower_copy(key) == "url" && lower_copy(code) == "label") {
      continue;
    }
    require_nonempty(key, "url", path, line_no);
    ExpandedLabel label;
    try {
      label = parse_label_code(code);
    } catch (const std::invalid_argument& e) {
      throw ParseError("io: " + location(path, line_no) + ": " + e.what());
    }
    labels[normalize_url(key)] = label;
  }
  return labels;
}

std::vector<std::string> load_domain_list(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::vector<std::string> domains;
  std::string line;
  while (next_line(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::string domain = lower_copy(trim_copy(line));
    if (!domain.empty()) domains.push_back(std::move(domain));
  }
  return domains;
}

std::vector<std::string> load_url_list(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::vector<std::string> urls;
  std::string line;
  while (next_line(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::string url = trim_copy(line);
    if (!url.empty()) urls.push_back(normalize_url(url));
  }
  return urls;
}

Dataset load_dataset(const std::filesystem::path& visits,
                     const std::filesystem::path* queries,
                     const std::filesystem::path* labels,
                     std::vector<std::string>* warnings) {
  Dataset ds;
  ds.visits = load_visit_tsv(visits, warnings);
  if (queries != nullptr) ds.queries = load_query_tsv(*queries, warnings);
  if (labels != nullptr) ds.labels = load_label_csv(*labels);
  return ds;
}

}  // namespace polarlens

/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "polarlens/records.hpp"

namespace polarlens {

// Raised for malformed input files; the message carries file:line.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Visit log: UTF-8 TSV, no header, LF line ends, four columns
//   user_id \t session_id \t url \t timestamp
// Rows with the wrong column count, empty required fields, or a
// non-positive/non-numeric timestamp raise ParseError. An empty file
// loads as zero records with a warning.
std::vector<LogRecord> load_visit_tsv(const std::filesystem::path& path,
                                      std::vector<std::string>* warnings = nullptr);

// Query log: five columns
//   user_id \t session_id \t query \t clicked_url \t timestamp
// clicked_url may be empty (no click). Query text is trimmed and
// lowercased on ingest and must be non-empty after trimming.
std::vector<QueryRecord> load_query_tsv(const std::filesystem::path& path,
                                        std::vector<std::string>* warnings = nullptr);

// Label CSV: `url,label` rows (optional "url,label" header) where url is
// a URL or bare registered domain and label one of EC, MC, HB, PF, MR,
// ER, OFF, NA (GC/BF/GR accepted for curated lists). Keys are stored
// normalized.
LabelMap load_label_csv(const std::filesystem::path& path);

// One registered domain per line; '#' starts a comment. Lowercased.
std::vector<std::string> load_domain_list(const std::filesystem::path& path);

// One URL per line; '#' starts a comment. Normalized on load.
std::vector<std::string> load_url_list(const std::filesystem::path& path);

// Convenience bundle loader for the common CLI path.
Dataset load_dataset(const std::filesystem::path& visits,
                     const std::filesystem::path* queries,
                     const std::filesystem::path* labels,
                     std::vector<std::string>* warnings = nullptr);

// Splits one CSV line into fields, honoring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace polarlens

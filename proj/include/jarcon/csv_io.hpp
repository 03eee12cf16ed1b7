#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "jarcon/core_model.hpp"

namespace jarcon {

/// Splits one CSV record. Fields may be double-quoted ("" escapes a quote);
/// surrounding whitespace of unquoted fields is trimmed.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

/// Long format: header with (at least) assessor,sample,attribute,liking,jar
/// in any order; unknown columns are ignored. An empty jar marks a
/// liking-only record. Every failure is an Error(validation) whose message
/// names the source, line and field.
Dataset ingest_csv(std::istream& in, std::string_view source = "<input>");
Dataset ingest_csv_file(const std::filesystem::path& path);

/// Wide format as exported from spreadsheets: assessor,sample followed by
/// <attribute>_liking and <attribute>_jar columns, one row per (assessor,
/// sample). Attributes without a _jar column are liking-only; a row leaving
/// both cells of an attribute empty skips it.
Dataset ingest_wide_csv(std::istream& in, std::string_view source = "<input>");

/// Long format, paired records first, then liking-only records.
void write_csv(const Dataset& ds, std::ostream& out);
void write_csv_file(const Dataset& ds, const std::filesystem::path& path);

}  // namespace jarcon

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace denguecast::io {

/// One data row: 1-based line number in the file plus raw fields.
struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// A tokenized CSV file: leading `#key=value` directive lines, one header row,
/// then data rows. Tokenization never fails on arbitrary bytes; all
/// validation happens in the typed parsers.
struct CsvFile {
    std::vector<std::pair<std::string, std::string>> directives;
    CsvRow header;
    std::vector<CsvRow> rows;
};

CsvFile parse_csv_text(std::string_view text);

/// Reads and tokenizes `path`. Throws ValidationError when the file cannot be
/// opened.
CsvFile read_csv(const std::string& path);

/// Locale-independent decimal parse of a full field. Empty fields give
/// nullopt (missing); anything else must parse completely as a double.
/// Returns nullopt and sets `ok = false` on malformed content.
std::optional<double> parse_numeric_field(std::string_view field, bool& ok);

/// Strict integer parse of a full field.
std::optional<long long> parse_integer_field(std::string_view field);

/// Shortest decimal form that round-trips a double exactly (17 significant
/// digits are always sufficient).
std::string format_double(double v);

} // namespace denguecast::io

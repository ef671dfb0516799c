#include "denguecast/io/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "denguecast/error.hpp"

namespace denguecast::io {

namespace {

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.emplace_back(line.substr(begin, i - begin));
            begin = i + 1;
        }
    }
    return out;
}

} // namespace

CsvFile parse_csv_text(std::string_view text) {
    CsvFile file;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos <= text.size()) {
        if (pos == text.size()) break;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (!header_seen && line.front() == '#') {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                file.directives.emplace_back(std::string(line.substr(1)), "");
            else
                file.directives.emplace_back(std::string(line.substr(1, eq - 1)),
                                             std::string(line.substr(eq + 1)));
            continue;
        }
        CsvRow row{line_no, split_fields(line)};
        if (!header_seen) {
            file.header = std::move(row);
            header_seen = true;
        } else {
            file.rows.push_back(std::move(row));
        }
    }
    return file;
}

CsvFile read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv_text(buf.str());
}

std::optional<double> parse_numeric_field(std::string_view field, bool& ok) {
    ok = true;
    if (field.empty()) return std::nullopt;
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        ok = false;
        return std::nullopt;
    }
    return v;
}

std::optional<long long> parse_integer_field(std::string_view field) {
    if (field.empty()) return std::nullopt;
    long long v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
    return v;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace denguecast::io

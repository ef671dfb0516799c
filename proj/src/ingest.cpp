#include "denguecast/io/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "denguecast/io/csv.hpp"

namespace denguecast::io {

IngestError::IngestError(const std::string& summary, FileReport report)
    : ValidationError(summary), report_(std::move(report)) {}

namespace {

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * fraction);
    return buf;
}

bool header_matches(const CsvRow& header, const std::vector<std::string>& expected) {
    return header.fields == expected;
}

std::string header_error(const std::string& label, const std::string& expected) {
    return label + ": header must be `" + expected + "`";
}

void reject(FileReport& report, std::size_t line, std::string message) {
    ++report.rows_rejected;
    report.rejections.push_back({line, std::move(message)});
}

[[noreturn]] void throw_rejected(const std::string& label, FileReport report) {
    std::ostringstream msg;
    msg << label << " rejected: " << report.rows_rejected << " invalid row(s)";
    for (std::size_t i = 0; i < report.rejections.size() && i < 5; ++i)
        msg << "\n  line " << report.rejections[i].line << ": " << report.rejections[i].message;
    if (report.rejections.size() > 5)
        msg << "\n  ... and " << (report.rejections.size() - 5) << " more";
    throw IngestError(msg.str(), std::move(report));
}

WeeklySeries series_from_map(const std::map<EpiWeek, double>& points, const EpiWeek& first,
                             const EpiWeek& last, std::optional<double> fill, std::string unit) {
    WeeklySeries s;
    s.start = first;
    s.unit = std::move(unit);
    const auto n = static_cast<std::size_t>(week_diff(last, first)) + 1;
    s.values.assign(n, fill ? std::optional<double>(*fill) : std::nullopt);
    for (const auto& [w, v] : points)
        s.values[static_cast<std::size_t>(week_diff(w, first))] = v;
    return s;
}

double pearson(const std::vector<std::pair<double, double>>& pairs) {
    const std::size_t n = pairs.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0, my = 0;
    for (const auto& [a, b] : pairs) {
        mx += a;
        my += b;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (const auto& [a, b] : pairs) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if (sxx == 0 || syy == 0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

std::string IngestReport::to_text() const {
    std::ostringstream out;
    for (const auto& f : files) {
        out << "== " << f.path << " ==\n";
        out << "rows read " << f.rows_read << ", accepted " << f.rows_accepted << ", rejected "
            << f.rows_rejected << "\n";
        for (const auto& s : f.series)
            out << "series " << s.name << ": " << s.coverage << ", missing "
                << percent(s.missing_fraction) << "\n";
        for (const auto& w : f.warnings) out << "warning: " << w << "\n";
        for (const auto& r : f.rejections)
            out << "rejected line " << r.line << ": " << r.message << "\n";
    }
    out << (any_rejected ? "RESULT: rejected\n" : "RESULT: ok\n");
    return out.str();
}

// --- cases ---------------------------------------------------------------

CasesData parse_cases_text(std::string_view text, const std::string& label) {
    const CsvFile csv = parse_csv_text(text);
    FileReport report;
    report.path = label;
    if (!header_matches(csv.header, {"area", "week", "cases"}))
        throw IngestError(header_error(label, "area,week,cases"), report);

    std::optional<std::pair<EpiWeek, EpiWeek>> declared;
    for (const auto& [key, value] : csv.directives) {
        if (key != "complete-range") continue;
        const auto colon = value.find(':');
        if (colon == std::string::npos)
            throw IngestError(label + ": malformed #complete-range directive", report);
        try {
            const EpiWeek a = parse_epiweek(value.substr(0, colon));
            const EpiWeek b = parse_epiweek(value.substr(colon + 1));
            if (b < a) throw ValidationError("range end precedes start");
            declared = {a, b};
        } catch (const ValidationError& e) {
            throw IngestError(label + ": bad #complete-range directive: " + e.what(), report);
        }
    }

    std::map<std::string, std::map<EpiWeek, double>> values;
    std::map<std::string, std::map<EpiWeek, std::size_t>> first_line;
    for (const auto& row : csv.rows) {
        ++report.rows_read;
        if (row.fields.size() != 3) {
            reject(report, row.line, "expected 3 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        const std::string& area = row.fields[0];
        if (area.empty()) {
            reject(report, row.line, "empty area id");
            continue;
        }
        EpiWeek week;
        try {
            week = parse_epiweek(row.fields[1]);
        } catch (const ValidationError& e) {
            reject(report, row.line, e.what());
            continue;
        }
        const auto count = parse_integer_field(row.fields[2]);
        if (!count || *count < 0) {
            reject(report, row.line, "cases must be a non-negative integer, got '" +
                                         row.fields[2] + "'");
            continue;
        }
        if (declared && (week < declared->first || declared->second < week)) {
            reject(report, row.line,
                   "week " + to_string(week) + " outside declared complete range");
            continue;
        }
        const auto [it, inserted] = first_line[area].try_emplace(week, row.line);
        if (!inserted) {
            reject(report, row.line, "duplicate (" + area + ", " + to_string(week) +
                                         "), first seen at line " + std::to_string(it->second));
            continue;
        }
        values[area][week] = static_cast<double>(*count);
        ++report.rows_accepted;
    }

    if (report.rows_rejected > 0) throw_rejected(label, report);
    if (report.rows_read == 0) throw IngestError(label + ": no data rows", report);

    CasesData out;
    for (auto& [area, points] : values) {
        EpiWeek first = points.begin()->first;
        EpiWeek last = points.rbegin()->first;
        std::optional<double> fill;
        if (declared) {
            first = declared->first;
            last = declared->second;
            fill = 0.0;
        }
        WeeklySeries s = series_from_map(points, first, last, fill, "cases");
        report.series.push_back({area, s.range_str(), s.missing_fraction()});
        if (area == "CR")
            out.national = std::move(s);
        else
            out.areas[area] = std::move(s);
    }
    if (!out.national)
        report.warnings.push_back("no national rows (area id CR): relative risk needs them");
    out.report = std::move(report);
    return out;
}

CasesData parse_cases_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_cases_text(buf.str(), path);
}

// --- climate ---------------------------------------------------------------

ClimateData parse_climate_text(std::string_view text, const std::string& label) {
    const CsvFile csv = parse_csv_text(text);
    FileReport report;
    report.path = label;
    if (!header_matches(csv.header,
                        {"date", "station", "tmin", "tmean", "tmax", "precip_mm", "rh_pct"}))
        throw IngestError(header_error(label, "date,station,tmin,tmean,tmax,precip_mm,rh_pct"),
                          report);

    struct FullRecord {
        Date date;
        std::optional<double> tmin, tmean, tmax, precip, rh;
    };
    std::map<std::string, std::map<Date, FullRecord>> per_station;
    std::map<std::string, std::map<Date, std::size_t>> first_line;
    bool structural_failure = false;

    for (const auto& row : csv.rows) {
        ++report.rows_read;
        if (row.fields.size() != 7) {
            reject(report, row.line, "expected 7 fields, got " + std::to_string(row.fields.size()));
            structural_failure = true;
            continue;
        }
        Date date;
        try {
            date = parse_date(row.fields[0]);
        } catch (const ValidationError& e) {
            reject(report, row.line, e.what());
            structural_failure = true;
            continue;
        }
        const std::string& station = row.fields[1];
        if (station.empty()) {
            reject(report, row.line, "empty station id");
            structural_failure = true;
            continue;
        }
        FullRecord rec;
        rec.date = date;
        bool ok = true;
        bool field_ok = true;
        rec.tmin = parse_numeric_field(row.fields[2], field_ok);
        ok &= field_ok;
        rec.tmean = parse_numeric_field(row.fields[3], field_ok);
        ok &= field_ok;
        rec.tmax = parse_numeric_field(row.fields[4], field_ok);
        ok &= field_ok;
        rec.precip = parse_numeric_field(row.fields[5], field_ok);
        ok &= field_ok;
        rec.rh = parse_numeric_field(row.fields[6], field_ok);
        ok &= field_ok;
        if (!ok) {
            reject(report, row.line, "malformed numeric field");
            structural_failure = true;
            continue;
        }
        const auto [it, inserted] = first_line[station].try_emplace(date, row.line);
        if (!inserted) {
            reject(report, row.line, "duplicate (" + station + ", " + to_string(date) +
                                         "), first seen at line " + std::to_string(it->second));
            structural_failure = true;
            continue;
        }
        // Bounds violations reject only the row.
        if (rec.rh && (*rec.rh < 0.0 || *rec.rh > 100.0)) {
            reject(report, row.line,
                   "relative humidity " + format_double(*rec.rh) + " outside [0,100]");
            continue;
        }
        if (rec.precip && *rec.precip < 0.0) {
            reject(report, row.line, "negative precipitation " + format_double(*rec.precip));
            continue;
        }
        per_station[station][date] = rec;
        ++report.rows_accepted;
    }

    if (structural_failure) throw_rejected(label, report);
    if (report.rows_read == 0) throw IngestError(label + ": no data rows", report);

    // Temperature channel sanity report, then tmin/tmax are dropped.
    std::vector<std::pair<double, double>> min_mean, mean_max, min_max;
    for (const auto& [station, recs] : per_station) {
        for (const auto& [date, r] : recs) {
            if (r.tmin && r.tmean) min_mean.push_back({*r.tmin, *r.tmean});
            if (r.tmean && r.tmax) mean_max.push_back({*r.tmean, *r.tmax});
            if (r.tmin && r.tmax) min_max.push_back({*r.tmin, *r.tmax});
        }
    }
    {
        std::ostringstream corr;
        corr << "temperature channel correlations: tmin~tmean " << format_double(pearson(min_mean))
             << ", tmean~tmax " << format_double(pearson(mean_max)) << ", tmin~tmax "
             << format_double(pearson(min_max)) << "; tmin/tmax dropped, mean retained";
        report.warnings.push_back(corr.str());
    }

    ClimateData out;
    for (const auto& [station, recs] : per_station) {
        auto& vec = out.stations[station];
        std::size_t present_tmean = 0;
        for (const auto& [date, r] : recs) {
            vec.push_back({r.date, r.tmean, r.precip, r.rh});
            if (r.tmean) ++present_tmean;
        }
        FileReport::SeriesStats stats;
        stats.name = station;
        stats.coverage = to_string(vec.front().date) + ".." + to_string(vec.back().date);
        stats.missing_fraction =
            1.0 - static_cast<double>(present_tmean) / static_cast<double>(vec.size());
        report.series.push_back(std::move(stats));
    }
    out.report = std::move(report);
    return out;
}

ClimateData parse_climate_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_climate_text(buf.str(), path);
}

// --- ssta ---------------------------------------------------------------

SstaData parse_ssta_text(std::string_view text, const std::string& label) {
    const CsvFile csv = parse_csv_text(text);
    FileReport report;
    report.path = label;
    if (!header_matches(csv.header, {"week", "ssta"}))
        throw IngestError(header_error(label, "week,ssta"), report);

    std::map<EpiWeek, double> points;
    std::map<EpiWeek, std::size_t> first_line;
    for (const auto& row : csv.rows) {
        ++report.rows_read;
        if (row.fields.size() != 2) {
            reject(report, row.line, "expected 2 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        EpiWeek week;
        try {
            week = parse_epiweek(row.fields[0]);
        } catch (const ValidationError& e) {
            reject(report, row.line, e.what());
            continue;
        }
        bool ok = true;
        const auto value = parse_numeric_field(row.fields[1], ok);
        if (!ok || !value) {
            reject(report, row.line, "non-numeric anomaly '" + row.fields[1] + "'");
            continue;
        }
        const auto [it, inserted] = first_line.try_emplace(week, row.line);
        if (!inserted) {
            reject(report, row.line, "duplicate week " + to_string(week) + ", first seen at line " +
                                         std::to_string(it->second));
            continue;
        }
        if (std::abs(*value) > 5.0)
            report.warnings.push_back("line " + std::to_string(row.line) + ": anomaly " +
                                      format_double(*value) + " outside plausible range [-5, 5]");
        points[week] = *value;
        ++report.rows_accepted;
    }

    if (report.rows_rejected > 0) throw_rejected(label, report);
    if (points.empty()) throw IngestError(label + ": no data rows", report);

    SstaData out;
    out.ssta = series_from_map(points, points.begin()->first, points.rbegin()->first, std::nullopt,
                               "deg C anomaly");
    report.series.push_back({"ssta", out.ssta.range_str(), out.ssta.missing_fraction()});
    out.report = std::move(report);
    return out;
}

SstaData parse_ssta_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ssta_text(buf.str(), path);
}

// --- population ---------------------------------------------------------------

PopulationData parse_population_text(std::string_view text, const std::string& label) {
    const CsvFile csv = parse_csv_text(text);
    FileReport report;
    report.path = label;
    if (!header_matches(csv.header, {"area", "year", "population"}))
        throw IngestError(header_error(label, "area,year,population"), report);

    PopulationData out;
    std::map<std::string, std::map<int, std::size_t>> first_line;
    for (const auto& row : csv.rows) {
        ++report.rows_read;
        if (row.fields.size() != 3) {
            reject(report, row.line, "expected 3 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        const std::string& area = row.fields[0];
        if (area.empty()) {
            reject(report, row.line, "empty area id");
            continue;
        }
        const auto year = parse_integer_field(row.fields[1]);
        if (!year || *year < 1900 || *year > 2200) {
            reject(report, row.line, "bad year '" + row.fields[1] + "'");
            continue;
        }
        const auto count = parse_integer_field(row.fields[2]);
        if (!count || *count <= 0) {
            reject(report, row.line,
                   "population must be a positive integer, got '" + row.fields[2] + "'");
            continue;
        }
        const auto [it, inserted] =
            first_line[area].try_emplace(static_cast<int>(*year), row.line);
        if (!inserted) {
            reject(report, row.line, "duplicate (" + area + ", " + row.fields[1] +
                                         "), first seen at line " + std::to_string(it->second));
            continue;
        }
        out.areas[area].push_back({static_cast<int>(*year), *count});
        ++report.rows_accepted;
    }

    if (report.rows_rejected > 0) throw_rejected(label, report);
    if (out.areas.find("CR") == out.areas.end())
        throw IngestError(label + ": no national rows (area id CR); relative risk is undefined "
                                  "without a national population",
                          report);
    for (auto& [area, anchors] : out.areas) {
        std::sort(anchors.begin(), anchors.end(),
                  [](const auto& a, const auto& b) { return a.year < b.year; });
        report.series.push_back(
            {area,
             std::to_string(anchors.front().year) + ".." + std::to_string(anchors.back().year),
             0.0});
    }
    out.report = std::move(report);
    return out;
}

PopulationData parse_population_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_population_text(buf.str(), path);
}

} // namespace denguecast::io

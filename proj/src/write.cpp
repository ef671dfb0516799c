#include "denguecast/io/write.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "denguecast/io/csv.hpp"

namespace denguecast::io {

namespace fs = std::filesystem;

void atomic_write(const std::string& path, const std::string& content) {
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write file: " + tmp.string());
        out << content;
        if (!out) throw ValidationError("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

std::string format_count(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
}

void append_cases_series(std::ostringstream& out, const std::string& area,
                         const WeeklySeries& s,
                         const std::optional<std::pair<EpiWeek, EpiWeek>>& complete_range) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& v = s.values[i];
        if (!v) continue;
        // Under a complete-range declaration zeros are implied by absence.
        if (complete_range && *v == 0.0) continue;
        out << area << ',' << to_string(s.week_at(i)) << ',' << format_count(*v) << '\n';
    }
}

} // namespace

std::string render_cases_csv(const std::map<std::string, WeeklySeries>& areas,
                             const std::optional<WeeklySeries>& national,
                             const std::optional<std::pair<EpiWeek, EpiWeek>>& complete_range) {
    std::ostringstream out;
    if (complete_range)
        out << "#complete-range=" << to_string(complete_range->first) << ':'
            << to_string(complete_range->second) << '\n';
    out << "area,week,cases\n";
    for (const auto& [area, s] : areas) append_cases_series(out, area, s, complete_range);
    if (national) append_cases_series(out, "CR", *national, complete_range);
    return out.str();
}

std::string render_climate_csv(const std::map<std::string, std::vector<DailyClimateRecord>>& st) {
    std::ostringstream out;
    out << "date,station,tmin,tmean,tmax,precip_mm,rh_pct\n";
    const auto cell = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const auto& [station, recs] : st) {
        for (const auto& r : recs) {
            // tmin/tmax are not modeled; emit the mean in all three channels.
            out << to_string(r.date) << ',' << station << ',' << cell(r.tmean) << ','
                << cell(r.tmean) << ',' << cell(r.tmean) << ',' << cell(r.precip_mm) << ','
                << cell(r.rh_pct) << '\n';
        }
    }
    return out.str();
}

std::string render_ssta_csv(const WeeklySeries& ssta) {
    std::ostringstream out;
    out << "week,ssta\n";
    for (std::size_t i = 0; i < ssta.size(); ++i)
        if (ssta.values[i])
            out << to_string(ssta.week_at(i)) << ',' << format_double(*ssta.values[i]) << '\n';
    return out.str();
}

std::string render_population_csv(const std::map<std::string, std::vector<PopulationAnchor>>& a) {
    std::ostringstream out;
    out << "area,year,population\n";
    for (const auto& [area, anchors] : a)
        for (const auto& anchor : anchors)
            out << area << ',' << anchor.year << ',' << anchor.count << '\n';
    return out.str();
}

std::string render_lags_csv(const std::vector<LagRow>& rows) {
    std::ostringstream out;
    out << "area,covariate,lag,correlation\n";
    for (const auto& r : rows)
        out << r.area << ',' << r.covariate << ',' << r.lag << ',' << format_double(r.correlation)
            << '\n';
    return out.str();
}

std::vector<LagRow> parse_lags_csv(const std::string& path) {
    const CsvFile csv = read_csv(path);
    if (csv.header.fields != std::vector<std::string>{"area", "covariate", "lag", "correlation"})
        throw ValidationError(path + ": header must be `area,covariate,lag,correlation`");
    std::vector<LagRow> rows;
    for (const auto& row : csv.rows) {
        if (row.fields.size() != 4)
            throw ValidationError(path + ": line " + std::to_string(row.line) + ": expected 4 fields");
        const auto lag = parse_integer_field(row.fields[2]);
        bool ok = true;
        const auto corr = parse_numeric_field(row.fields[3], ok);
        if (!lag || !ok || !corr)
            throw ValidationError(path + ": line " + std::to_string(row.line) + ": malformed row");
        rows.push_back({row.fields[0], row.fields[1], static_cast<int>(*lag), *corr});
    }
    return rows;
}

} // namespace denguecast::io

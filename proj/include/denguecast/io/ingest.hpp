#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "denguecast/epiweek.hpp"
#include "denguecast/error.hpp"
#include "denguecast/series.hpp"
#include "denguecast/transforms.hpp"

namespace denguecast::io {

struct RowDiagnostic {
    std::size_t line = 0;
    std::string message;
};

/// Per-file ingestion summary: row accounting, rejection diagnostics, soft
/// warnings, and per-series coverage after parsing.
struct FileReport {
    std::string path;
    std::size_t rows_read = 0;
    std::size_t rows_accepted = 0;
    std::size_t rows_rejected = 0;
    std::vector<RowDiagnostic> rejections;
    std::vector<std::string> warnings;

    struct SeriesStats {
        std::string name;
        std::string coverage; // "2007-W01..2017-W52"
        double missing_fraction = 0.0;
    };
    std::vector<SeriesStats> series;
};

struct IngestReport {
    std::vector<FileReport> files;
    bool any_rejected = false;
    std::string to_text() const;
};

/// A CSV input was rejected. Carries the partial report so callers can still
/// print row-level diagnostics.
class IngestError : public ValidationError {
public:
    IngestError(const std::string& summary, FileReport report);
    const FileReport& report() const { return report_; }

private:
    FileReport report_;
};

// --- cases.csv ---------------------------------------------------------------
// Header `area,week,cases`, week format YYYY-Www, reserved area id "CR" for the
// national series. Weeks absent from the file stay missing unless a
// `#complete-range=YYYY-Www:YYYY-Www` directive declares full coverage, in
// which case absent weeks inside the range become explicit zeros. Any invalid
// row (negative or non-integer count, malformed week, duplicate (area, week))
// rejects the whole file.
struct CasesData {
    std::map<std::string, WeeklySeries> areas; // excludes "CR"
    std::optional<WeeklySeries> national;
    FileReport report;
};
CasesData parse_cases_csv(const std::string& path);
CasesData parse_cases_text(std::string_view text, const std::string& label);

// --- climate.csv -------------------------------------------------------------
// Header `date,station,tmin,tmean,tmax,precip_mm,rh_pct`, one station per
// area (station id == area id). Empty cells are missing. Structural problems
// (bad header, malformed date or number, duplicate (station, date)) reject
// the file; bounds violations (humidity outside [0,100], negative
// precipitation) reject only the offending row. tmin/tmax are kept long
// enough to report their correlation with the mean and are then dropped.
struct DailyClimateRecord {
    Date date;
    std::optional<double> tmean;
    std::optional<double> precip_mm;
    std::optional<double> rh_pct;
};
struct ClimateData {
    std::map<std::string, std::vector<DailyClimateRecord>> stations; // sorted by date
    FileReport report;
};
ClimateData parse_climate_csv(const std::string& path);
ClimateData parse_climate_text(std::string_view text, const std::string& label);

// --- ssta.csv ----------------------------------------------------------------
// Header `week,ssta`. Gap weeks become missing values; anomalies with
// |value| > 5 are accepted with a warning.
struct SstaData {
    WeeklySeries ssta;
    FileReport report;
};
SstaData parse_ssta_csv(const std::string& path);
SstaData parse_ssta_text(std::string_view text, const std::string& label);

// --- population.csv ----------------------------------------------------------
// Header `area,year,population`; strictly positive integer counts; national
// rows use the reserved id "CR" and must be present.
struct PopulationData {
    std::map<std::string, std::vector<PopulationAnchor>> areas; // includes "CR"
    FileReport report;
};
PopulationData parse_population_csv(const std::string& path);
PopulationData parse_population_text(std::string_view text, const std::string& label);

} // namespace denguecast::io

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "denguecast/io/ingest.hpp"
#include "denguecast/series.hpp"
#include "denguecast/transforms.hpp"

namespace denguecast::io {

/// Writes `content` to `path` atomically (temp file + rename). Creates parent
/// directories as needed.
void atomic_write(const std::string& path, const std::string& content);

/// Emitters for the four input formats. Numeric values are printed in a form
/// that parses back bit-identically; counts are printed as plain integers.
std::string render_cases_csv(const std::map<std::string, WeeklySeries>& areas,
                             const std::optional<WeeklySeries>& national,
                             const std::optional<std::pair<EpiWeek, EpiWeek>>& complete_range);
std::string render_climate_csv(const std::map<std::string, std::vector<DailyClimateRecord>>& st);
std::string render_ssta_csv(const WeeklySeries& ssta);
std::string render_population_csv(const std::map<std::string, std::vector<PopulationAnchor>>& a);

struct LagRow {
    std::string area;
    std::string covariate;
    int lag = 0;
    double correlation = 0.0;
};
std::string render_lags_csv(const std::vector<LagRow>& rows);
std::vector<LagRow> parse_lags_csv(const std::string& path);

} // namespace denguecast::io

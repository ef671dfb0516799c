#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "denguecast/panel.hpp"
#include "denguecast/series.hpp"

namespace denguecast {

/// RR_t = (area cases_t / area population_t) / (national cases_t / national population_t).
/// Weeks where the national count is zero (or any input is missing) yield a
/// missing value. Throws AlignmentError when the ranges differ.
WeeklySeries compute_relative_risk(const AreaPanel& area, const NationalReference& national);

/// v -> ln(v + c) on every present value; missing stays missing.
/// Throws ValidationError (naming the week) on negative precipitation.
WeeklySeries log_transform_precip(const WeeklySeries& p, double c = 1.0);

/// Inverse of log_transform_precip, used by round-trip checks and CSV emission.
WeeklySeries exp_inverse_precip(const WeeklySeries& p, double c = 1.0);

struct DailyValue {
    Date date;
    std::optional<double> value;
};

enum class AggregationRule { mean, sum };

struct WeeklyAggregate {
    WeeklySeries series;
    std::vector<double> coverage; // present-day fraction per week, parallel to series
};

/// Group strictly-increasing dated observations by ISO week. A week with all
/// days missing is missing; a partial week aggregates the present days and
/// records its coverage fraction. Throws ValidationError on duplicate or
/// out-of-order dates.
WeeklyAggregate aggregate_daily_to_weekly(const std::vector<DailyValue>& daily,
                                          AggregationRule rule);

/// Annual population estimate used as an interpolation anchor.
struct PopulationAnchor {
    int year = 0;
    long long count = 0;
};

/// Weekly population by linear interpolation between mid-year anchors
/// (anchored at July 1), constant beyond the first and last anchor. Weeks are
/// evaluated at their Thursday. Throws ValidationError on non-positive counts,
/// fewer than two anchors, or anchor year gaps above two years.
WeeklySeries interpolate_population(std::vector<PopulationAnchor> anchors, const EpiWeek& start,
                                    std::size_t n_weeks);

/// Interpolated population at an arbitrary date (exposed for tests).
double population_at_date(const std::vector<PopulationAnchor>& sorted_anchors, const Date& d);

} // namespace denguecast

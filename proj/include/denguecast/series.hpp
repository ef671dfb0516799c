#pragma once

#include <optional>
#include <string>
#include <vector>

#include "denguecast/epiweek.hpp"

namespace denguecast {

/// Weekly time series with an explicit missing mask. Index i corresponds to
/// `start` advanced by i weeks; gaps in time are represented as missing
/// values, never as skipped indices.
struct WeeklySeries {
    EpiWeek start{2007, 1};
    std::vector<std::optional<double>> values;
    std::string unit;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }

    EpiWeek week_at(std::size_t i) const { return advance(start, static_cast<std::int64_t>(i)); }
    EpiWeek last_week() const { return week_at(values.empty() ? 0 : values.size() - 1); }

    /// Index of `w` inside this series, or nullopt when out of range.
    std::optional<std::size_t> index_of(const EpiWeek& w) const;
    std::optional<double> at_week(const EpiWeek& w) const;

    std::size_t present_count() const;
    double missing_fraction() const;

    /// "2007-W01..2017-W52" (or "empty").
    std::string range_str() const;

    /// Re-window onto [new_start, new_start + n): values outside the original
    /// range become missing.
    WeeklySeries aligned_to(const EpiWeek& new_start, std::size_t n) const;

    static WeeklySeries constant(const EpiWeek& start, std::size_t n, double value,
                                 std::string unit = "");

    bool operator==(const WeeklySeries& other) const = default;
};

/// True when both series cover exactly the same week range.
bool same_range(const WeeklySeries& a, const WeeklySeries& b);

} // namespace denguecast

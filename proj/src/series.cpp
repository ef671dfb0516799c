#include "denguecast/series.hpp"

namespace denguecast {

std::optional<std::size_t> WeeklySeries::index_of(const EpiWeek& w) const {
    const std::int64_t d = week_diff(w, start);
    if (d < 0 || d >= static_cast<std::int64_t>(values.size())) return std::nullopt;
    return static_cast<std::size_t>(d);
}

std::optional<double> WeeklySeries::at_week(const EpiWeek& w) const {
    const auto i = index_of(w);
    if (!i) return std::nullopt;
    return values[*i];
}

std::size_t WeeklySeries::present_count() const {
    std::size_t n = 0;
    for (const auto& v : values)
        if (v) ++n;
    return n;
}

double WeeklySeries::missing_fraction() const {
    if (values.empty()) return 0.0;
    return 1.0 - static_cast<double>(present_count()) / static_cast<double>(values.size());
}

std::string WeeklySeries::range_str() const {
    if (values.empty()) return "empty";
    return to_string(start) + ".." + to_string(last_week());
}

WeeklySeries WeeklySeries::aligned_to(const EpiWeek& new_start, std::size_t n) const {
    WeeklySeries out;
    out.start = new_start;
    out.unit = unit;
    out.values.assign(n, std::nullopt);
    const std::int64_t offset = week_diff(start, new_start);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::int64_t j = offset + static_cast<std::int64_t>(i);
        if (j >= 0 && j < static_cast<std::int64_t>(n)) out.values[static_cast<std::size_t>(j)] = values[i];
    }
    return out;
}

WeeklySeries WeeklySeries::constant(const EpiWeek& start, std::size_t n, double value,
                                    std::string unit) {
    WeeklySeries s;
    s.start = start;
    s.unit = std::move(unit);
    s.values.assign(n, value);
    return s;
}

bool same_range(const WeeklySeries& a, const WeeklySeries& b) {
    return a.start == b.start && a.values.size() == b.values.size();
}

} // namespace denguecast

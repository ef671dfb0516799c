#include "denguecast/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "denguecast/error.hpp"

namespace denguecast {

void CovariateSet::validate() const {
    if (!same_range(mean_temp, precip_log) || !same_range(mean_temp, rel_humidity) ||
        !same_range(mean_temp, ssta))
        throw AlignmentError("covariate series not aligned: temp " + mean_temp.range_str() +
                             ", precip " + precip_log.range_str() + ", humidity " +
                             rel_humidity.range_str() + ", ssta " + ssta.range_str());
    for (std::size_t i = 0; i < rel_humidity.size(); ++i) {
        const auto& v = rel_humidity.values[i];
        if (v && (*v < 0.0 || *v > 100.0))
            throw ValidationError("relative humidity out of [0,100] at " +
                                  to_string(rel_humidity.week_at(i)));
    }
}

void AreaPanel::validate() const {
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& v = cases.values[i];
        if (v && (*v < 0.0 || *v != std::floor(*v)))
            throw ValidationError("area " + area_id + ": cases must be non-negative integers at " +
                                  to_string(cases.week_at(i)));
    }
    for (std::size_t i = 0; i < population.size(); ++i) {
        const auto& v = population.values[i];
        if (v && *v <= 0.0)
            throw ValidationError("area " + area_id + ": population must be positive at " +
                                  to_string(population.week_at(i)));
    }
    covariates.validate();
}

void NationalReference::validate() const {
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& v = cases.values[i];
        if (v && (*v < 0.0 || *v != std::floor(*v)))
            throw ValidationError("national cases must be non-negative integers at " +
                                  to_string(cases.week_at(i)));
    }
    for (std::size_t i = 0; i < population.size(); ++i) {
        const auto& v = population.values[i];
        if (v && *v <= 0.0)
            throw ValidationError("national population must be positive at " +
                                  to_string(population.week_at(i)));
    }
}

WeeklySeries compute_relative_risk(const AreaPanel& area, const NationalReference& national) {
    if (!same_range(area.cases, national.cases) || !same_range(area.cases, area.population) ||
        !same_range(area.cases, national.population))
        throw AlignmentError("relative risk needs aligned series: area " + area.cases.range_str() +
                             " vs national " + national.cases.range_str());

    WeeklySeries rr;
    rr.start = area.cases.start;
    rr.unit = "relative risk";
    rr.values.assign(area.cases.size(), std::nullopt);
    for (std::size_t t = 0; t < area.cases.size(); ++t) {
        const auto& ac = area.cases.values[t];
        const auto& ap = area.population.values[t];
        const auto& nc = national.cases.values[t];
        const auto& np = national.population.values[t];
        if (!ac || !ap || !nc || !np) continue;
        if (*nc == 0.0) continue; // national rate zero: RR undefined, stays missing
        if (*np <= 0.0)
            throw ValidationError("national population not positive at " +
                                  to_string(area.cases.week_at(t)));
        rr.values[t] = (*ac / *ap) / (*nc / *np);
    }
    return rr;
}

WeeklySeries log_transform_precip(const WeeklySeries& p, double c) {
    if (c <= 0.0) throw ValidationError("log transform constant must be positive");
    WeeklySeries out = p;
    out.unit = "log(mm + c)";
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& v = out.values[i];
        if (!v) continue;
        if (*v < 0.0)
            throw ValidationError("negative precipitation at " + to_string(p.week_at(i)) +
                                  " (index " + std::to_string(i) + ")");
        v = std::log(*v + c);
    }
    return out;
}

WeeklySeries exp_inverse_precip(const WeeklySeries& p, double c) {
    WeeklySeries out = p;
    out.unit = "mm";
    for (auto& v : out.values)
        if (v) v = std::exp(*v) - c;
    return out;
}

WeeklyAggregate aggregate_daily_to_weekly(const std::vector<DailyValue>& daily,
                                          AggregationRule rule) {
    WeeklyAggregate out;
    if (daily.empty()) return out;

    for (std::size_t i = 1; i < daily.size(); ++i) {
        if (daily[i].date == daily[i - 1].date)
            throw ValidationError("duplicate date " + to_string(daily[i].date));
        if (days_from_civil(daily[i].date) < days_from_civil(daily[i - 1].date))
            throw ValidationError("dates not strictly increasing at " + to_string(daily[i].date));
    }

    const EpiWeek first = epiweek_of(daily.front().date);
    const EpiWeek last = epiweek_of(daily.back().date);
    const std::size_t n = static_cast<std::size_t>(week_diff(last, first)) + 1;

    out.series.start = first;
    out.series.values.assign(n, std::nullopt);
    out.coverage.assign(n, 0.0);

    std::vector<double> acc(n, 0.0);
    std::vector<int> count(n, 0);
    for (const auto& d : daily) {
        if (!d.value) continue;
        const auto idx = static_cast<std::size_t>(week_diff(epiweek_of(d.date), first));
        acc[idx] += *d.value;
        ++count[idx];
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.coverage[i] = count[i] / 7.0;
        if (count[i] == 0) continue;
        out.series.values[i] = rule == AggregationRule::mean ? acc[i] / count[i] : acc[i];
    }
    return out;
}

double population_at_date(const std::vector<PopulationAnchor>& anchors, const Date& d) {
    const auto anchor_day = [](const PopulationAnchor& a) {
        return days_from_civil(Date{a.year, 7, 1});
    };
    const std::int64_t x = days_from_civil(d);
    if (x <= anchor_day(anchors.front())) return static_cast<double>(anchors.front().count);
    if (x >= anchor_day(anchors.back())) return static_cast<double>(anchors.back().count);
    for (std::size_t i = 1; i < anchors.size(); ++i) {
        const std::int64_t lo = anchor_day(anchors[i - 1]);
        const std::int64_t hi = anchor_day(anchors[i]);
        if (x <= hi) {
            const double f = static_cast<double>(x - lo) / static_cast<double>(hi - lo);
            return static_cast<double>(anchors[i - 1].count) +
                   f * static_cast<double>(anchors[i].count - anchors[i - 1].count);
        }
    }
    return static_cast<double>(anchors.back().count); // unreachable
}

WeeklySeries interpolate_population(std::vector<PopulationAnchor> anchors, const EpiWeek& start,
                                    std::size_t n_weeks) {
    if (anchors.size() < 2)
        throw ValidationError("population interpolation needs at least two annual anchors");
    std::sort(anchors.begin(), anchors.end(),
              [](const auto& a, const auto& b) { return a.year < b.year; });
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        if (anchors[i].count <= 0)
            throw ValidationError("non-positive population for year " +
                                  std::to_string(anchors[i].year));
        if (i > 0) {
            const int gap = anchors[i].year - anchors[i - 1].year;
            if (gap == 0)
                throw ValidationError("duplicate population anchor for year " +
                                      std::to_string(anchors[i].year));
            if (gap > 3)
                throw ValidationError("population anchor gap of " + std::to_string(gap - 1) +
                                      " years after " + std::to_string(anchors[i - 1].year) +
                                      " exceeds the two-year limit");
        }
    }

    WeeklySeries out;
    out.start = start;
    out.unit = "persons";
    out.values.assign(n_weeks, std::nullopt);
    for (std::size_t i = 0; i < n_weeks; ++i) {
        // Evaluate at the Thursday, the midpoint of the ISO week.
        const Date monday = monday_of(out.week_at(i));
        const Date thursday = civil_from_days(days_from_civil(monday) + 3);
        out.values[i] = population_at_date(anchors, thursday);
    }
    return out;
}

} // namespace denguecast

#include "denguecast/impute/impute.hpp"

#include <array>
#include <sstream>

#include "denguecast/error.hpp"

namespace denguecast::imputation {

std::vector<Gap> detect_gaps(const WeeklySeries& s) {
    std::vector<Gap> gaps;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s.values[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && !s.values[j]) ++j;
        gaps.push_back({i, j - i});
        i = j;
    }
    return gaps;
}

namespace {

/// Week-of-year means over present values; index 0 unused (weeks are 1..53).
struct Climatology {
    std::array<double, 54> mean{};
    std::array<bool, 54> defined{};
    double global_mean = 0.0;

    double at(int week_of_year) const {
        if (defined[static_cast<std::size_t>(week_of_year)])
            return mean[static_cast<std::size_t>(week_of_year)];
        return global_mean;
    }
};

Climatology build_climatology(const WeeklySeries& s) {
    Climatology c;
    std::array<double, 54> sum{};
    std::array<std::size_t, 54> count{};
    double total = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s.values[i]) continue;
        const auto woy = static_cast<std::size_t>(s.week_at(i).week);
        sum[woy] += *s.values[i];
        ++count[woy];
        total += *s.values[i];
        ++n;
    }
    for (std::size_t w = 1; w <= 53; ++w) {
        if (count[w] == 0) continue;
        c.mean[w] = sum[w] / static_cast<double>(count[w]);
        c.defined[w] = true;
    }
    c.global_mean = n > 0 ? total / static_cast<double>(n) : 0.0;
    return c;
}

} // namespace

ImputeResult impute(const WeeklySeries& s, int max_interp_gap) {
    if (max_interp_gap < 0) throw ValidationError("max_interp_gap must be non-negative");

    const auto gaps = detect_gaps(s);
    ImputeResult out;
    out.series = s;
    if (gaps.empty()) return out;

    const auto gap_limit = static_cast<std::size_t>(max_interp_gap);
    bool needs_climatology = false;
    for (const auto& g : gaps) {
        const bool interior = g.start > 0 && g.start + g.length < s.size();
        if (!interior || g.length > gap_limit) needs_climatology = true;
    }

    Climatology clim;
    if (needs_climatology) {
        if (s.present_count() < 52)
            throw InsufficientDataError(
                "imputation needs at least 52 present values to estimate climatology, got " +
                std::to_string(s.present_count()));
        clim = build_climatology(s);
    }

    for (const auto& g : gaps) {
        const bool has_left = g.start > 0;
        const bool has_right = g.start + g.length < s.size();
        if (has_left && has_right && g.length <= gap_limit) {
            const double left = *s.values[g.start - 1];
            const double right = *s.values[g.start + g.length];
            for (std::size_t k = 0; k < g.length; ++k) {
                const double f = static_cast<double>(k + 1) / static_cast<double>(g.length + 1);
                out.series.values[g.start + k] = left + f * (right - left);
                out.mask.entries.push_back({g.start + k, FillMethod::linear_interpolation});
            }
        } else if (has_left && has_right) {
            for (std::size_t k = 0; k < g.length; ++k) {
                const std::size_t idx = g.start + k;
                out.series.values[idx] = clim.at(s.week_at(idx).week);
                out.mask.entries.push_back({idx, FillMethod::climatology});
            }
        } else if (g.length <= gap_limit) {
            // Edge gap short enough to trust the seasonal mean.
            for (std::size_t k = 0; k < g.length; ++k) {
                const std::size_t idx = g.start + k;
                out.series.values[idx] = clim.at(s.week_at(idx).week);
                out.mask.entries.push_back({idx, FillMethod::climatology});
            }
        } else {
            for (std::size_t k = 0; k < g.length; ++k) out.mask.unfilled.push_back(g.start + k);
        }
    }
    return out;
}

std::string render_mask_csv(const WeeklySeries& s, const ImputationMask& mask) {
    std::ostringstream out;
    out << "week,method\n";
    for (const auto& e : mask.entries)
        out << to_string(s.week_at(e.index)) << ','
            << (e.method == FillMethod::linear_interpolation ? "linear" : "climatology") << '\n';
    for (const auto idx : mask.unfilled) out << to_string(s.week_at(idx)) << ",unfilled\n";
    return out.str();
}

} // namespace denguecast::imputation

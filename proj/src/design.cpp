#include "denguecast/lags/design.hpp"

#include <algorithm>

#include "denguecast/error.hpp"

namespace denguecast::lags {

void LagConfig::validate() const {
    for (const int l : {humidity, precip_log, mean_temp, ssta})
        if (l < 0 || l > 30)
            throw ValidationError("covariate lag " + std::to_string(l) + " outside [0, 30]");
}

int LagConfig::max_lag() const {
    return std::max({humidity, precip_log, mean_temp, ssta});
}

const std::array<std::string, DesignMatrix::n_columns>& DesignMatrix::column_names() {
    static const std::array<std::string, n_columns> names = {
        "rr_lag1",    "humidity",  "humidity_lag", "precip_log", "precip_log_lag",
        "mean_temp", "mean_temp_lag", "ssta",      "ssta_lag"};
    return names;
}

DesignMatrix build_design(const AreaPanel& panel, const LagConfig& lags) {
    lags.validate();
    const auto& cov = panel.covariates;
    cov.validate();
    if (!same_range(panel.rr, cov.mean_temp))
        throw AlignmentError("rr " + panel.rr.range_str() + " not aligned with covariates " +
                             cov.mean_temp.range_str());

    const std::size_t n = panel.rr.size();
    const std::size_t trim = static_cast<std::size_t>(std::max(lags.max_lag(), 1));

    DesignMatrix out;
    std::vector<std::array<double, DesignMatrix::n_columns>> rows;
    std::vector<double> ys;

    for (std::size_t t = trim; t < n; ++t) {
        const std::array<std::optional<double>, DesignMatrix::n_columns> cells = {
            panel.rr.values[t - 1],
            cov.rel_humidity.values[t],
            cov.rel_humidity.values[t - static_cast<std::size_t>(lags.humidity)],
            cov.precip_log.values[t],
            cov.precip_log.values[t - static_cast<std::size_t>(lags.precip_log)],
            cov.mean_temp.values[t],
            cov.mean_temp.values[t - static_cast<std::size_t>(lags.mean_temp)],
            cov.ssta.values[t],
            cov.ssta.values[t - static_cast<std::size_t>(lags.ssta)]};
        const auto& y = panel.rr.values[t];

        std::string missing;
        if (!y) missing = "rr";
        for (int j = 0; j < DesignMatrix::n_columns && missing.empty(); ++j)
            if (!cells[static_cast<std::size_t>(j)])
                missing = DesignMatrix::column_names()[static_cast<std::size_t>(j)];
        if (!missing.empty()) {
            out.dropped.push_back({panel.rr.week_at(t), "missing " + missing});
            continue;
        }

        std::array<double, DesignMatrix::n_columns> row;
        for (int j = 0; j < DesignMatrix::n_columns; ++j)
            row[static_cast<std::size_t>(j)] = *cells[static_cast<std::size_t>(j)];
        rows.push_back(row);
        ys.push_back(*y);
        out.weeks.push_back(panel.rr.week_at(t));
    }

    if (rows.size() < 60)
        throw InsufficientDataError("design matrix for area " + panel.area_id + " has only " +
                                    std::to_string(rows.size()) + " usable rows (needs 60)");

    out.columns.resize(static_cast<Eigen::Index>(rows.size()), DesignMatrix::n_columns);
    out.response.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < DesignMatrix::n_columns; ++j)
            out.columns(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
        out.response(static_cast<Eigen::Index>(i)) = ys[i];
    }
    return out;
}

} // namespace denguecast::lags

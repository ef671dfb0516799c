#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "denguecast/panel.hpp"

namespace denguecast::lags {

/// Selected lag (weeks) per covariate, each in [0, 30].
struct LagConfig {
    int humidity = 0;   // l1
    int precip_log = 0; // l2
    int mean_temp = 0;  // l3
    int ssta = 0;       // l4

    void validate() const;
    int max_lag() const;

    bool operator==(const LagConfig&) const = default;
};

/// Lagged regression table shared by the spline model and the forest:
/// response RR_t against the previous-week risk, the four covariates at the
/// current week and the four covariates at their selected lags.
struct DesignMatrix {
    static constexpr int n_columns = 9;
    static const std::array<std::string, n_columns>& column_names();

    std::vector<EpiWeek> weeks; // response week per row, strictly increasing
    Eigen::MatrixXd columns;    // rows x 9
    Eigen::VectorXd response;   // RR_t

    std::vector<std::pair<EpiWeek, std::string>> dropped; // rows removed and why

    Eigen::Index rows() const { return columns.rows(); }
};

/// Assembles the design matrix from a panel with computed RR and imputed
/// covariates. The first max(l1..l4, 1) weeks are trimmed; any row still
/// containing a missing value is dropped and logged. Throws
/// InsufficientDataError below 60 usable rows.
DesignMatrix build_design(const AreaPanel& panel, const LagConfig& lags);

} // namespace denguecast::lags

#pragma once

#include <string>

#include "denguecast/series.hpp"

namespace denguecast {

/// The four weekly climate covariates of one area, aligned to a common range.
struct CovariateSet {
    WeeklySeries mean_temp;    // deg C
    WeeklySeries precip_log;   // log(mm + c)
    WeeklySeries rel_humidity; // percent, values in [0, 100]
    WeeklySeries ssta;         // deg C anomaly

    /// Throws when the four series are not aligned or humidity is out of bounds.
    void validate() const;
};

/// One study area: weekly cases, interpolated population, covariates and the
/// relative-risk series derived from them.
struct AreaPanel {
    std::string area_id;
    WeeklySeries cases;      // non-negative integer counts
    WeeklySeries population; // strictly positive
    CovariateSet covariates;
    WeeklySeries rr; // filled by compute_relative_risk

    void validate() const;
};

/// Country-wide weekly cases and population, the denominator of relative risk.
struct NationalReference {
    WeeklySeries cases;
    WeeklySeries population;

    void validate() const;
};

} // namespace denguecast

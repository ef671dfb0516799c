#pragma once

#include <optional>
#include <vector>

#include "denguecast/series.hpp"

namespace denguecast::lags {

/// Cross-correlation function: entry k is the Pearson correlation of the
/// pairs (x[t-k], y[t]) over all t where both values are present.
struct Ccf {
    std::vector<std::optional<double>> r; // index = lag; nullopt = undefined (zero variance)

    int max_lag() const { return static_cast<int>(r.size()) - 1; }
};

/// Computes the CCF for lags 0..max_lag. `x` and `y` must be aligned (same
/// index means same week). Requires at least max_lag + 8 present pairs at
/// every lag; a lag where either shifted sample has zero variance yields an
/// undefined entry instead of an error.
Ccf cross_correlation(const std::vector<std::optional<double>>& x,
                      const std::vector<std::optional<double>>& y, int max_lag = 30);

/// Lag with the largest correlation among defined entries. With
/// `absolute = true` (the default) the magnitude decides; ties break toward
/// the smallest lag. Throws UndefinedResultError when every entry is
/// undefined.
int select_lag(const Ccf& ccf, bool absolute = true);

} // namespace denguecast::lags

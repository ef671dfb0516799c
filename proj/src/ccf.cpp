#include "denguecast/lags/ccf.hpp"

#include <cmath>

#include "denguecast/error.hpp"

namespace denguecast::lags {

Ccf cross_correlation(const std::vector<std::optional<double>>& x,
                      const std::vector<std::optional<double>>& y, int max_lag) {
    if (max_lag < 0) throw ValidationError("max_lag must be non-negative");
    if (x.size() != y.size())
        throw AlignmentError("cross-correlation inputs must be aligned: " +
                             std::to_string(x.size()) + " vs " + std::to_string(y.size()) +
                             " weeks");

    Ccf out;
    out.r.assign(static_cast<std::size_t>(max_lag) + 1, std::nullopt);
    const std::size_t n = y.size();
    const std::size_t min_pairs = static_cast<std::size_t>(max_lag) + 8;

    for (int k = 0; k <= max_lag; ++k) {
        double sx = 0, sy = 0;
        std::size_t m = 0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            const auto& xv = x[t - static_cast<std::size_t>(k)];
            const auto& yv = y[t];
            if (!xv || !yv) continue;
            sx += *xv;
            sy += *yv;
            ++m;
        }
        if (m < min_pairs)
            throw InsufficientDataError("cross-correlation at lag " + std::to_string(k) +
                                        " has only " + std::to_string(m) + " present pairs (needs " +
                                        std::to_string(min_pairs) + ")");
        const double mx = sx / static_cast<double>(m);
        const double my = sy / static_cast<double>(m);
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            const auto& xv = x[t - static_cast<std::size_t>(k)];
            const auto& yv = y[t];
            if (!xv || !yv) continue;
            sxy += (*xv - mx) * (*yv - my);
            sxx += (*xv - mx) * (*xv - mx);
            syy += (*yv - my) * (*yv - my);
        }
        if (sxx == 0.0 || syy == 0.0) continue; // zero variance: entry stays undefined
        double r = sxy / std::sqrt(sxx * syy);
        if (r > 1.0) r = 1.0;
        if (r < -1.0) r = -1.0;
        out.r[static_cast<std::size_t>(k)] = r;
    }
    return out;
}

int select_lag(const Ccf& ccf, bool absolute) {
    int best = -1;
    double best_score = 0.0;
    for (std::size_t k = 0; k < ccf.r.size(); ++k) {
        if (!ccf.r[k]) continue;
        const double score = absolute ? std::abs(*ccf.r[k]) : *ccf.r[k];
        if (best < 0 || score > best_score) {
            best = static_cast<int>(k);
            best_score = score;
        }
    }
    if (best < 0) throw UndefinedResultError("all cross-correlation entries are undefined");
    return best;
}

} // namespace denguecast::lags

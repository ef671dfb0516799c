#pragma once

#include <string>
#include <vector>

#include "denguecast/series.hpp"

namespace denguecast::imputation {

struct Gap {
    std::size_t start = 0;  // index of the first missing value
    std::size_t length = 0; // run length

    bool operator==(const Gap&) const = default;
};

/// Maximal runs of consecutive missing values, sorted by start index.
std::vector<Gap> detect_gaps(const WeeklySeries& s);

enum class FillMethod { linear_interpolation, climatology };

struct MaskEntry {
    std::size_t index = 0;
    FillMethod method = FillMethod::linear_interpolation;

    bool operator==(const MaskEntry&) const = default;
};

struct ImputationMask {
    std::vector<MaskEntry> entries;    // every imputed index, ascending
    std::vector<std::size_t> unfilled; // indices left missing (reported, not errors)

    bool empty() const { return entries.empty() && unfilled.empty(); }
};

struct ImputeResult {
    WeeklySeries series;
    ImputationMask mask;
};

/// Completes missing values deterministically:
///   - interior gaps of length <= max_interp_gap: linear interpolation between
///     the flanking present values;
///   - interior gaps longer than that: week-of-year climatological mean of the
///     original present values (global mean of present values when a
///     week-of-year never occurs with data);
///   - leading/trailing gaps of length <= max_interp_gap: climatological mean
///     (one flank is not enough to interpolate);
///   - leading/trailing gaps longer than max_interp_gap: left missing and
///     reported in the mask.
/// Present values are never modified and climatology uses only original
/// present values, so the operation is idempotent. Throws
/// InsufficientDataError when climatology is needed but fewer than 52 values
/// are present.
ImputeResult impute(const WeeklySeries& s, int max_interp_gap = 4);

/// Mask rendering for audit: `week,method` CSV.
std::string render_mask_csv(const WeeklySeries& s, const ImputationMask& mask);

} // namespace denguecast::imputation

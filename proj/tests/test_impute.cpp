#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "denguecast/error.hpp"
#include "denguecast/impute/impute.hpp"

using namespace denguecast;
using namespace denguecast::imputation;

namespace {

WeeklySeries series_of(std::vector<std::optional<double>> v, EpiWeek start = {2007, 1}) {
    WeeklySeries s;
    s.start = start;
    s.values = std::move(v);
    return s;
}

/// Multi-year series with a fixed weekly profile, for climatology checks.
WeeklySeries seasonal_series(int years, double (*profile)(int woy)) {
    WeeklySeries s;
    s.start = EpiWeek{2007, 1};
    EpiWeek w = s.start;
    const EpiWeek last{2007 + years - 1, 52};
    while (w <= last) {
        s.values.push_back(profile(w.week));
        w = next_week(w);
    }
    return s;
}

} // namespace

TEST_CASE("detect_gaps finds maximal runs") {
    CHECK(detect_gaps(series_of({1.0, std::nullopt, std::nullopt, 4.0})) ==
          std::vector<Gap>{{1, 2}});
    CHECK(detect_gaps(series_of({1.0, 2.0})).empty());
    CHECK(detect_gaps(series_of({std::nullopt, std::nullopt, std::nullopt})) ==
          std::vector<Gap>{{0, 3}});
    CHECK(detect_gaps(series_of({std::nullopt, 1.0, std::nullopt})) ==
          std::vector<Gap>{{0, 1}, {2, 1}});
}

TEST_CASE("short interior gap is linearly interpolated") {
    const auto res = impute(series_of({2.0, std::nullopt, 4.0}));
    CHECK(*res.series.values[1] == doctest::Approx(3.0).epsilon(1e-15));
    REQUIRE(res.mask.entries.size() == 1);
    CHECK(res.mask.entries[0] == MaskEntry{1, FillMethod::linear_interpolation});
    CHECK(res.mask.unfilled.empty());
}

TEST_CASE("long gap is filled with the week-of-year climatological mean") {
    auto s = seasonal_series(6, [](int woy) { return woy == 30 ? 7.0 : 1.0 + woy * 0.01; });
    // Knock out a 10-week stretch covering week 30 of 2009.
    const auto i0 = *s.index_of(EpiWeek{2009, 26});
    for (std::size_t k = 0; k < 10; ++k) s.values[i0 + k] = std::nullopt;
    const auto res = impute(s);
    const auto i30 = *s.index_of(EpiWeek{2009, 30});
    CHECK(*res.series.values[i30] == doctest::Approx(7.0).epsilon(1e-12));
    for (const auto& e : res.mask.entries) CHECK(e.method == FillMethod::climatology);
    CHECK(res.mask.entries.size() == 10);
}

TEST_CASE("no gaps: identical series and empty mask") {
    const auto s = seasonal_series(2, [](int woy) { return 1.0 * woy; });
    const auto res = impute(s);
    CHECK(res.series == s);
    CHECK(res.mask.empty());
}

TEST_CASE("climatology with fewer than 52 present values is an error") {
    std::vector<std::optional<double>> v(40, 1.0);
    for (int i = 10; i < 20; ++i) v[static_cast<std::size_t>(i)] = std::nullopt; // long gap
    CHECK_THROWS_AS(impute(series_of(std::move(v))), InsufficientDataError);
}

TEST_CASE("leading gaps longer than the interpolation limit stay missing") {
    auto s = seasonal_series(3, [](int woy) { return 1.0 * woy; });
    for (std::size_t k = 0; k < 6; ++k) s.values[k] = std::nullopt;
    const auto res = impute(s);
    for (std::size_t k = 0; k < 6; ++k) CHECK(!res.series.values[k].has_value());
    CHECK(res.mask.unfilled == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("short leading gap falls back to climatology") {
    auto s = seasonal_series(3, [](int woy) { return 1.0 * woy; });
    s.values[0] = std::nullopt; // week 1 of 2007
    const auto res = impute(s);
    // Week-of-year 1 is present in 2008 and 2009 with value 1.0.
    CHECK(*res.series.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(res.mask.entries.size() == 1);
    CHECK(res.mask.entries[0].method == FillMethod::climatology);
}

TEST_CASE("imputation properties on fuzzed series") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> val(-5, 40);
    std::uniform_int_distribution<int> n_gaps(0, 8), gap_len(1, 9);

    for (int iter = 0; iter < 300; ++iter) {
        auto s = seasonal_series(3, [](int woy) { return 10.0 + woy * 0.3; });
        for (auto& v : s.values) v = val(rng);
        const int g = n_gaps(rng);
        for (int k = 0; k < g; ++k) {
            const int len = gap_len(rng);
            std::uniform_int_distribution<std::size_t> pos(0, s.size() - static_cast<std::size_t>(len));
            const std::size_t p = pos(rng);
            for (std::size_t j = 0; j < static_cast<std::size_t>(len); ++j)
                s.values[p + j] = std::nullopt;
        }
        if (s.present_count() < 52) continue;

        const auto once = impute(s);

        // Present values are never modified.
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s.values[i]) CHECK(*once.series.values[i] == *s.values[i]);

        // Interpolated values lie within the two anchors.
        for (const auto& e : once.mask.entries) {
            if (e.method != FillMethod::linear_interpolation) continue;
            std::size_t lo = e.index;
            while (!s.values[lo]) --lo;
            std::size_t hi = e.index;
            while (!s.values[hi]) ++hi;
            const double a = std::min(*s.values[lo], *s.values[hi]);
            const double b = std::max(*s.values[lo], *s.values[hi]);
            CHECK(*once.series.values[e.index] >= a - 1e-12);
            CHECK(*once.series.values[e.index] <= b + 1e-12);
        }

        // Idempotence: a second pass changes nothing and fills nothing.
        const auto twice = impute(once.series);
        CHECK(twice.series == once.series);
        CHECK(twice.mask.entries.empty());
        CHECK(twice.mask.unfilled == once.mask.unfilled);
    }
}

TEST_CASE("climatology fill depends only on original present values") {
    auto s = seasonal_series(4, [](int woy) { return 3.0 + 0.1 * woy; });
    const auto i0 = *s.index_of(EpiWeek{2008, 20});
    for (std::size_t k = 0; k < 8; ++k) s.values[i0 + k] = std::nullopt;
    // Also punch a short gap elsewhere: its interpolated values must not
    // influence the climatology fill.
    const auto j0 = *s.index_of(EpiWeek{2009, 5});
    s.values[j0] = std::nullopt;

    const auto full = impute(s);

    auto without_short_gap = s;
    without_short_gap.values[j0] = 3.0 + 0.1 * 5; // restore the original value
    const auto alt = impute(without_short_gap);
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(*full.series.values[i0 + k] ==
              doctest::Approx(*alt.series.values[i0 + k]).epsilon(1e-12));
}

TEST_CASE("mask renders as week,method CSV") {
    const auto res = impute(series_of({2.0, std::nullopt, 4.0}));
    const auto text = render_mask_csv(res.series, res.mask);
    CHECK(text == "week,method\n2007-W02,linear\n");
}

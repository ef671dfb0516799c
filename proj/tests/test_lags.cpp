#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "denguecast/error.hpp"
#include "denguecast/lags/ccf.hpp"
#include "denguecast/lags/design.hpp"
#include "oracles.hpp"

using namespace denguecast;
using namespace denguecast::lags;

namespace {

std::vector<std::optional<double>> random_walk(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> step(0.0, 1.0);
    std::vector<std::optional<double>> out;
    double x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x += step(rng);
        out.push_back(x);
    }
    return out;
}

} // namespace

TEST_CASE("ccf of a series with itself is 1 at lag 0") {
    std::mt19937_64 rng(1);
    const auto x = random_walk(rng, 100);
    const auto ccf = cross_correlation(x, x, 10);
    CHECK(*ccf.r[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("planted shift of a random walk is recovered at lag 5") {
    std::mt19937_64 rng(2);
    const auto x = random_walk(rng, 600);
    std::vector<std::optional<double>> y(x.size(), std::nullopt);
    for (std::size_t t = 5; t < x.size(); ++t) y[t] = *x[t - 5];
    const auto ccf = cross_correlation(x, y, 30);
    CHECK(select_lag(ccf) == 5);
    CHECK(*ccf.r[5] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("independent noise keeps every correlation small at n=1000") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<std::optional<double>> x, y;
    for (int i = 0; i < 1000; ++i) {
        x.push_back(d(rng));
        y.push_back(d(rng));
    }
    const auto ccf = cross_correlation(x, y, 30);
    for (const auto& r : ccf.r) CHECK(std::abs(*r) < 0.2);
}

TEST_CASE("ccf matches the two-pass Pearson oracle to 1e-10") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-10, 10);
    std::bernoulli_distribution missing(0.05);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::optional<double>> x, y;
        for (int i = 0; i < 200; ++i) {
            x.push_back(missing(rng) ? std::nullopt : std::optional<double>(u(rng)));
            y.push_back(missing(rng) ? std::nullopt : std::optional<double>(u(rng)));
        }
        const auto ccf = cross_correlation(x, y, 30);
        for (int k = 0; k <= 30; ++k) {
            const auto expected = oracle::lagged_pearson(x, y, k);
            REQUIRE(ccf.r[static_cast<std::size_t>(k)].has_value() == expected.has_value());
            if (expected)
                CHECK(*ccf.r[static_cast<std::size_t>(k)] ==
                      doctest::Approx(*expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("zero variance at a lag yields an undefined entry, not an error") {
    std::vector<std::optional<double>> x(60, 1.0); // constant: zero variance at every lag
    std::mt19937_64 rng(5);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<std::optional<double>> y;
    for (int i = 0; i < 60; ++i) y.push_back(d(rng));
    const auto ccf = cross_correlation(x, y, 4);
    for (const auto& r : ccf.r) CHECK(!r.has_value());
    CHECK_THROWS_AS(select_lag(ccf), UndefinedResultError);
}

TEST_CASE("ccf enforces the minimum pair count") {
    std::vector<std::optional<double>> x(20, 1.0), y(20, 1.0);
    CHECK_THROWS_AS(cross_correlation(x, y, 30), InsufficientDataError);
}

TEST_CASE("select_lag picks the maximum and breaks ties toward the smallest lag") {
    CHECK(select_lag({{0.1, 0.9, 0.3}}) == 1);
    CHECK(select_lag({{0.5, -0.8}}) == 1);      // |-0.8| wins under the absolute criterion
    CHECK(select_lag({{0.5, -0.8}}, false) == 0); // raw criterion prefers +0.5
    CHECK(select_lag({{0.7, 0.7}}) == 0);
    CHECK(select_lag({{std::nullopt, 0.2, std::nullopt}}) == 1);
}

TEST_CASE("select_lag is invariant under positive affine rescaling") {
    std::mt19937_64 rng(6);
    const auto x = random_walk(rng, 300);
    const auto y = random_walk(rng, 300);
    const auto base = select_lag(cross_correlation(x, y, 20));
    auto xs = x;
    for (auto& v : xs) v = 3.7 * *v + 11.0;
    auto ys = y;
    for (auto& v : ys) v = 0.2 * *v - 4.0;
    CHECK(select_lag(cross_correlation(xs, ys, 20)) == base);
    const auto a = cross_correlation(x, y, 20);
    const auto b = cross_correlation(xs, ys, 20);
    for (std::size_t k = 0; k < a.r.size(); ++k)
        CHECK(*a.r[k] == doctest::Approx(*b.r[k]).epsilon(1e-10));
}

namespace {

AreaPanel synthetic_panel(std::size_t n, std::uint64_t seed = 11) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    AreaPanel p;
    p.area_id = "A";
    const EpiWeek start{2007, 1};
    const auto fill = [&](WeeklySeries& s, double base, double scale) {
        s.start = start;
        s.values.clear();
        for (std::size_t i = 0; i < n; ++i) s.values.push_back(base + scale * d(rng));
    };
    fill(p.covariates.mean_temp, 26.0, 2.0);
    fill(p.covariates.precip_log, 3.5, 0.8);
    fill(p.covariates.rel_humidity, 80.0, 4.0);
    fill(p.covariates.ssta, 0.0, 0.8);
    fill(p.rr, 1.0, 0.2);
    fill(p.cases, 50.0, 0.0);
    fill(p.population, 1e5, 0.0);
    return p;
}

} // namespace

TEST_CASE("build_design: all lags zero trims exactly one week") {
    const auto p = synthetic_panel(120);
    const auto d = build_design(p, LagConfig{0, 0, 0, 0});
    CHECK(d.rows() == 119);
    CHECK(d.weeks.front() == EpiWeek{2007, 2});
    CHECK(d.columns.cols() == 9);
}

TEST_CASE("build_design: lag set (5,7,29,27) trims 29 rows") {
    const auto p = synthetic_panel(200);
    const auto d = build_design(p, LagConfig{5, 7, 29, 27});
    CHECK(d.rows() == 200 - 29);
}

TEST_CASE("build_design: a constant covariate column survives unchanged") {
    auto p = synthetic_panel(120);
    for (auto& v : p.covariates.ssta.values) v = 0.42;
    const auto d = build_design(p, LagConfig{0, 0, 0, 0});
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        CHECK(d.columns(i, 7) == 0.42);
        CHECK(d.columns(i, 8) == 0.42);
    }
}

TEST_CASE("build_design: rows contain exactly the source values at the offsets") {
    const auto p = synthetic_panel(250, 17);
    const LagConfig lags{5, 7, 29, 27};
    const auto d = build_design(p, lags);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> pick(0, static_cast<std::size_t>(d.rows()) - 1);
    for (int trial = 0; trial < 40; ++trial) {
        const auto i = pick(rng);
        const auto t = *p.rr.index_of(d.weeks[i]);
        const auto ei = static_cast<Eigen::Index>(i);
        CHECK(d.columns(ei, 0) == *p.rr.values[t - 1]);
        CHECK(d.columns(ei, 1) == *p.covariates.rel_humidity.values[t]);
        CHECK(d.columns(ei, 2) ==
              *p.covariates.rel_humidity.values[t - static_cast<std::size_t>(lags.humidity)]);
        CHECK(d.columns(ei, 3) == *p.covariates.precip_log.values[t]);
        CHECK(d.columns(ei, 4) ==
              *p.covariates.precip_log.values[t - static_cast<std::size_t>(lags.precip_log)]);
        CHECK(d.columns(ei, 5) == *p.covariates.mean_temp.values[t]);
        CHECK(d.columns(ei, 6) ==
              *p.covariates.mean_temp.values[t - static_cast<std::size_t>(lags.mean_temp)]);
        CHECK(d.columns(ei, 7) == *p.covariates.ssta.values[t]);
        CHECK(d.columns(ei, 8) ==
              *p.covariates.ssta.values[t - static_cast<std::size_t>(lags.ssta)]);
        CHECK(d.response(ei) == *p.rr.values[t]);
    }
}

TEST_CASE("build_design: rows with missing values are dropped and logged") {
    auto p = synthetic_panel(150);
    p.covariates.mean_temp.values[40] = std::nullopt;
    const auto d = build_design(p, LagConfig{0, 0, 0, 0});
    CHECK(d.rows() == 148);
    REQUIRE(d.dropped.size() == 1);
    CHECK(d.dropped[0].first == p.rr.week_at(40));
    CHECK(d.dropped[0].second.find("mean_temp") != std::string::npos);
}

TEST_CASE("build_design: fewer than 60 usable rows is an error") {
    const auto p = synthetic_panel(70);
    CHECK_THROWS_AS(build_design(p, LagConfig{5, 7, 29, 27}), InsufficientDataError);
}

TEST_CASE("lag config validation") {
    const LagConfig negative{-1, 0, 0, 0};
    CHECK_THROWS_AS(negative.validate(), ValidationError);
    const LagConfig too_large{0, 31, 0, 0};
    CHECK_THROWS_AS(too_large.validate(), ValidationError);
    const LagConfig table{5, 7, 29, 27};
    CHECK(table.max_lag() == 29);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "extremes/error.hpp"
#include "extremes/series.hpp"
#include "test_support.hpp"

using namespace extremes;

TEST_CASE("summarize: constant series has zero spread") {
    const std::vector<double> v{5, 5, 5};
    const auto s = summarize(TimeSeries::from_values(v));
    CHECK(s.n == 3);
    CHECK(s.mean == 5.0);
    CHECK(s.variance == 0.0);
    CHECK(s.std_dev == 0.0);
    CHECK(s.min == 5.0);
    CHECK(s.max == 5.0);
}

TEST_CASE("summarize: raw precipitation events") {
    const auto events = testing::precip_events();
    const auto all = summarize(events);
    CHECK(all.n == 31);
    CHECK(testing::rel_close(all.std_dev, 271.6, 0.02));
    CHECK(all.min == 130.0);
    CHECK(all.max == 1355.0);

    // AR-dependent slice (observations 2..31) is within tolerance too.
    const auto values = events.values();
    const auto slice = summarize(std::span<const double>(values).subspan(1));
    CHECK(slice.n == 30);
    CHECK(testing::rel_close(slice.std_dev, 271.6, 0.02));
}

TEST_CASE("summarize: empty input is a data error") {
    CHECK_THROWS_AS(summarize(TimeSeries{}), DataError);
}

TEST_CASE("summarize: variance matches brute force on random inputs") {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> len(2, 100);
    std::normal_distribution<double> val(50.0, 20.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(len(rng)));
        for (auto& x : v) x = val(rng);
        long double mean = 0;
        for (double x : v) mean += x;
        mean /= v.size();
        long double ss = 0;
        for (double x : v) ss += (x - mean) * (x - mean);
        const double expected = static_cast<double>(ss / (v.size() - 1));

        const auto s = summarize(TimeSeries::from_values(v));
        CHECK(s.variance == doctest::Approx(expected).epsilon(1e-12));
        CHECK(s.std_dev == doctest::Approx(std::sqrt(expected)).epsilon(1e-12));
        CHECK(s.min <= s.mean);
        CHECK(s.mean <= s.max);

        // Permutation invariance.
        auto shuffled = v;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto p = summarize(TimeSeries::from_values(shuffled));
        CHECK(p.variance == doctest::Approx(s.variance).epsilon(1e-12));
        CHECK(p.min == s.min);
        CHECK(p.max == s.max);
    }
}

TEST_CASE("reindex: month jumps become observation numbers") {
    const TimeSeries s({{1, 200}, {8, 396}, {9, 280}});
    const auto r = reindex(s);
    CHECK(r.indices() == std::vector<std::int64_t>{1, 2, 3});
    CHECK(r.values() == std::vector<double>{200, 396, 280});
    CHECK(r.source_indices() == std::vector<std::int64_t>{1, 8, 9});
}

TEST_CASE("reindex: identity and singleton") {
    const std::vector<double> v{3, 1, 4, 1, 5};
    const auto s = TimeSeries::from_values(v);
    CHECK(reindex(s) == s);

    const auto single = reindex(TimeSeries({{42, 7.0}}));
    REQUIRE(single.size() == 1);
    CHECK(single[0] == Observation{1, 7.0});
    CHECK(single.source_indices() == std::vector<std::int64_t>{42});
}

TEST_CASE("reindex preserves summary statistics") {
    const auto events = testing::precip_events();
    const auto a = summarize(events);
    const auto b = summarize(reindex(events));
    CHECK(a.mean == b.mean);
    CHECK(a.variance == b.variance);
}

TEST_CASE("TimeSeries rejects invalid observations") {
    CHECK_THROWS_AS(TimeSeries({{1, 1.0}, {1, 2.0}}), DataError);
    CHECK_THROWS_AS(TimeSeries({{2, 1.0}, {1, 2.0}}), DataError);
    CHECK_THROWS_AS(TimeSeries({{0, 1.0}}), DataError);
    CHECK_THROWS_AS(TimeSeries({{1, std::nan("")}}), DataError);
    CHECK_THROWS_AS(reindex(TimeSeries{}), DataError);
}

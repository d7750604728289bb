#include <doctest.h>

#include <cmath>
#include <bit>
#include <numeric>

#include "mffdfa/error.hpp"
#include "mffdfa/generators.hpp"

using namespace mffdfa;

TEST_CASE("cascade worked example")
{
    const auto x = generate_cascade({0.65, 2});
    REQUIRE(x.size() == 4);
    CHECK(x[0] == doctest::Approx(0.1225));
    CHECK(x[1] == doctest::Approx(0.2275));
    CHECK(x[2] == doctest::Approx(0.2275));
    CHECK(x[3] == doctest::Approx(0.4225));
}

TEST_CASE("cascade conserves mass")
{
    for (double a : {0.55, 0.65, 0.8})
        for (unsigned n : {1u, 5u, 12u, 17u, 20u}) {
            const auto x = generate_cascade({a, n});
            REQUIRE(x.size() == (std::size_t{1} << n));
            long double total = 0.0L;
            for (double v : x.values()) {
                REQUIRE(v > 0.0);
                total += v;
            }
            CHECK(std::abs(static_cast<double>(total) - 1.0) < 1e-12);
        }
}

TEST_CASE("cascade matches its definition and is deterministic")
{
    const double a = 0.7;
    const auto x = generate_cascade({a, 10});
    for (std::size_t k = 0; k < x.size(); ++k) {
        const int ones = std::popcount(k);
        CHECK(x[k] == doctest::Approx(std::pow(a, ones) * std::pow(1.0 - a, 10 - ones)).epsilon(1e-13));
    }
    const auto y = generate_cascade({a, 10});
    CHECK(std::equal(x.values().begin(), x.values().end(), y.values().begin()));
    CHECK(generate_cascade({0.65, 17}).size() == 131072);
}

TEST_CASE("cascade rejects bad parameters")
{
    CHECK_THROWS_AS(generate_cascade({0.5, 4}), InputError);
    CHECK_THROWS_AS(generate_cascade({1.0, 4}), InputError);
    CHECK_THROWS_AS(generate_cascade({0.65, 0}), InputError);
    CHECK_THROWS_AS(generate_cascade({0.65, 27}), InputError);
    CHECK_THROWS_AS(CascadeOracle(0.3), InputError);
}

TEST_CASE("cascade oracle identities")
{
    for (double a : {0.55, 0.65, 0.8}) {
        const CascadeOracle o(a);
        CHECK(std::abs(o.tau(1.0)) < 1e-12);
        CHECK(o.tau(0.0) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(o.h(2.0) == doctest::Approx((o.tau(2.0) + 1.0) / 2.0).epsilon(1e-12));
        for (double q = -10.0; q <= 10.0; q += 0.25) {
            CHECK(std::abs(o.f_alpha(q) - (q * o.alpha(q) - o.tau(q))) < 1e-12);
            CHECK(o.alpha(q) > o.alpha_min_limit());
            CHECK(o.alpha(q) < o.alpha_max_limit());
        }
        CHECK(o.f_alpha(0.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(o.alpha(200.0) == doctest::Approx(o.alpha_min_limit()).epsilon(1e-6));
        CHECK(o.alpha(-200.0) == doctest::Approx(o.alpha_max_limit()).epsilon(1e-6));
    }
}

TEST_CASE("cascade oracle values at a = 0.65")
{
    const CascadeOracle o(0.65);
    CHECK(o.alpha_min_limit() == doctest::Approx(0.6215).epsilon(1e-4));
    CHECK(o.alpha_max_limit() == doctest::Approx(1.5146).epsilon(1e-4));
    CHECK(o.h(2.0) == doctest::Approx(0.9379).epsilon(1e-4));
    CHECK(o.alpha(0.0) == doctest::Approx(1.0681).epsilon(1e-4));
    CHECK(o.h(0.0) == o.alpha(0.0));
    CHECK(o.h(1e-7) == doctest::Approx(o.alpha(0.0)).epsilon(1e-6));
}

TEST_CASE("fGn autocovariance")
{
    CHECK(fgn_autocovariance(0.7, 0) == 1.0);
    CHECK(fgn_autocovariance(0.5, 1) == doctest::Approx(0.0));
    CHECK(fgn_autocovariance(0.5, 7) == doctest::Approx(0.0));
    CHECK(fgn_autocovariance(0.9, 1) == doctest::Approx(0.5 * (std::pow(2.0, 1.8) - 2.0)));
    CHECK(fgn_autocovariance(0.3, 1) < 0.0);
}

TEST_CASE("fGn is reproducible and validated")
{
    const FbmSpec spec{0.7, 2000, 42};
    const auto a = generate_fgn(spec);
    const auto b = generate_fgn(spec);
    REQUIRE(a.size() == 2000);
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    const auto c = generate_fgn({0.7, 2000, 43});
    CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));

    FbmSpec path = spec;
    path.output = FbmSpec::Output::path;
    const auto p = generate_fgn(path);
    double walk = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        walk += a[i];
        CHECK(p[i] == doctest::Approx(walk).epsilon(1e-12));
    }

    CHECK_THROWS_AS(generate_fgn({0.0, 100, 1}), InputError);
    CHECK_THROWS_AS(generate_fgn({1.0, 100, 1}), InputError);
    CHECK_THROWS_AS(generate_fgn({0.5, 0, 1}), InputError);
}

TEST_CASE("fGn lag-1 correlation at H = 0.5")
{
    const auto x = generate_fgn({0.5, 10000, 7});
    double num = 0.0, den = 0.0;
    const double mean = std::accumulate(x.values().begin(), x.values().end(), 0.0) / 10000.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        den += (x[i] - mean) * (x[i] - mean);
        if (i + 1 < x.size())
            num += (x[i] - mean) * (x[i + 1] - mean);
    }
    CHECK(std::abs(num / den) < 0.03);
}

TEST_CASE("fGn autocovariance at H = 0.9 over seeds")
{
    const double hurst = 0.9;
    const std::size_t n = 4096;
    const std::size_t seeds = 10;
    for (std::size_t lag : {1u, 2u, 5u, 10u}) {
        std::vector<double> est;
        for (std::size_t seed = 0; seed < seeds; ++seed) {
            const auto x = generate_fgn({hurst, n, 1000 + seed});
            double acc = 0.0;
            for (std::size_t i = 0; i + lag < n; ++i)
                acc += x[i] * x[i + lag];
            est.push_back(acc / static_cast<double>(n - lag));
        }
        const double mean = std::accumulate(est.begin(), est.end(), 0.0) / seeds;
        double var = 0.0;
        for (double e : est)
            var += (e - mean) * (e - mean);
        const double se = std::sqrt(var / (seeds - 1) / seeds);
        CHECK(std::abs(mean - fgn_autocovariance(hurst, lag)) < 3.0 * se + 1e-3);
    }
}

TEST_CASE("fGn mean is stationary")
{
    const auto x = generate_fgn({0.7, 8192, 3});
    double first = 0.0, second = 0.0;
    for (std::size_t i = 0; i < 4096; ++i) {
        first += x[i];
        second += x[i + 4096];
    }
    // sd of a block mean of length n is n^(H-1)
    const double sd = std::pow(4096.0, 0.7 - 1.0);
    CHECK(std::abs(first / 4096.0 - second / 4096.0) < 4.0 * std::sqrt(2.0) * sd);
}

#include <doctest.h>

#include "mffdfa/error.hpp"
#include "mffdfa/segmentation.hpp"

using namespace mffdfa;

TEST_CASE("layout examples")
{
    const auto two = layout(300, 100, 2);
    CHECK(two.stride == 50);
    CHECK(two.starts == std::vector<std::size_t>{0, 50, 100, 150, 200});
    CHECK(two.count() == (300 - 100) / 50 + 1);

    const auto one = layout(300, 100, 1);
    CHECK(one.starts == std::vector<std::size_t>{0, 100, 200});

    const auto full = layout(100, 100, 4);
    CHECK(full.stride == 25);
    CHECK(full.starts == std::vector<std::size_t>{0});
}

TEST_CASE("layout errors")
{
    CHECK_THROWS_AS(layout(99, 100, 1), InputError);
    CHECK_THROWS_AS(layout(1000, 10, 11), InputError);
    CHECK_THROWS_AS(layout(1000, 10, 0), InputError);
    try {
        layout(1000, 10, 11);
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("lower k") != std::string::npos);
    }
}

TEST_CASE("layout invariants hold exhaustively for small N")
{
    for (std::size_t n = 1; n <= 200; ++n) {
        for (std::size_t s = 1; s <= n; ++s) {
            // k = 1 equals the classical non-overlapping division
            const auto classic = layout(n, s, 1);
            REQUIRE(classic.count() == n / s);
            for (std::size_t i = 0; i < classic.count(); ++i)
                REQUIRE(classic.starts[i] == i * s);

            std::size_t previous = 0;
            for (std::size_t k = 1; k <= std::min<std::size_t>(s, 8); ++k) {
                const auto l = layout(n, s, k);
                REQUIRE(l.count() == (n - s) / (s / k) + 1);
                REQUIRE(l.count() >= previous);
                previous = l.count();
                for (std::size_t i = 0; i < l.count(); ++i) {
                    REQUIRE(l.starts[i] + s <= n);
                    if (i > 0)
                        REQUIRE(l.starts[i] - l.starts[i - 1] == s / k);
                }
            }
        }
    }
}

TEST_CASE("default scale grid")
{
    const auto grid = default_scale_grid(10000, kDefaultMinScale, default_max_scale(10000));
    CHECK(grid.scales.front() == 30);
    CHECK(grid.scales.back() == 1000);
    CHECK(grid.size() >= kMinScaleCount);
    for (std::size_t i = 1; i < grid.size(); ++i)
        CHECK(grid.scales[i] > grid.scales[i - 1]);

    CHECK(default_scale_grid(10000, 10, 10000, 4).scales == std::vector<std::size_t>{10, 100, 1000, 10000});

    CHECK_THROWS_AS(default_scale_grid(10000, 30, 30), InputError);
    CHECK_THROWS_AS(default_scale_grid(10000, 30, 32, 30), InputError);  // only 3 distinct
    CHECK_THROWS_AS(default_scale_grid(100, 30, 1000), InputError);
    CHECK_THROWS_AS(default_scale_grid(100, 3, 50), InputError);
}

TEST_CASE("explicit scale grids are validated")
{
    CHECK(make_scale_grid({64, 16, 32, 16, 128}, 1000).scales == std::vector<std::size_t>{16, 32, 64, 128});
    CHECK_THROWS_AS(make_scale_grid({16, 32, 64}, 1000), InputError);
    CHECK_THROWS_AS(make_scale_grid({16, 32, 64, 2000}, 1000), InputError);
}

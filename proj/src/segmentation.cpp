#include "mffdfa/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mffdfa/error.hpp"

namespace mffdfa {

SegmentLayout layout(std::size_t length, std::size_t scale, std::size_t overlap)
{
    if (scale == 0)
        throw InputError("segment scale must be positive");
    if (overlap == 0)
        throw InputError("overlap factor k must be positive");
    if (scale > length)
        throw InputError("segment scale " + std::to_string(scale) + " exceeds series length " +
                         std::to_string(length));
    if (overlap > scale)
        throw InputError("overlap factor k=" + std::to_string(overlap) + " exceeds scale s=" +
                         std::to_string(scale) + "; lower k so that the stride floor(s/k) is at least 1");

    SegmentLayout out;
    out.scale = scale;
    out.overlap = overlap;
    out.stride = scale / overlap;
    const std::size_t count = (length - scale) / out.stride + 1;
    out.starts.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        out.starts[i] = i * out.stride;
    return out;
}

std::size_t default_max_scale(std::size_t length) noexcept
{
    return length / 10;
}

namespace {

void check_scale_count(const ScaleGrid& grid)
{
    if (grid.size() < kMinScaleCount)
        throw InputError("scale grid has " + std::to_string(grid.size()) +
                         " distinct scales; the scaling fit needs at least " +
                         std::to_string(kMinScaleCount));
}

} // namespace

ScaleGrid default_scale_grid(std::size_t length, std::size_t s_min, std::size_t s_max,
                             std::size_t n_scales)
{
    if (s_min < kMinScale)
        throw InputError("s_min=" + std::to_string(s_min) + " is below the minimum scale " +
                         std::to_string(kMinScale));
    if (s_min >= s_max)
        throw InputError("empty scale range: s_min=" + std::to_string(s_min) +
                         " must be below s_max=" + std::to_string(s_max));
    if (s_max > length)
        throw InputError("s_max=" + std::to_string(s_max) + " exceeds series length " +
                         std::to_string(length));

    ScaleGrid grid;
    if (n_scales >= 2) {
        const double lo = std::log(static_cast<double>(s_min));
        const double hi = std::log(static_cast<double>(s_max));
        for (std::size_t i = 0; i < n_scales; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n_scales - 1);
            auto s = static_cast<std::size_t>(std::llround(std::exp(lo + t * (hi - lo))));
            grid.scales.push_back(std::clamp(s, s_min, s_max));
        }
    } else if (n_scales == 1) {
        grid.scales.push_back(s_min);
    }
    std::sort(grid.scales.begin(), grid.scales.end());
    grid.scales.erase(std::unique(grid.scales.begin(), grid.scales.end()), grid.scales.end());
    check_scale_count(grid);
    return grid;
}

ScaleGrid make_scale_grid(std::vector<std::size_t> scales, std::size_t length)
{
    ScaleGrid grid{std::move(scales)};
    std::sort(grid.scales.begin(), grid.scales.end());
    grid.scales.erase(std::unique(grid.scales.begin(), grid.scales.end()), grid.scales.end());
    for (std::size_t s : grid.scales) {
        if (s < kMinScale || s > length)
            throw InputError("scale " + std::to_string(s) + " outside [" + std::to_string(kMinScale) +
                             ", " + std::to_string(length) + "]");
    }
    check_scale_count(grid);
    return grid;
}

} // namespace mffdfa

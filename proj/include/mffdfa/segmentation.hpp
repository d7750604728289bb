#pragma once

#include <cstddef>
#include <vector>

namespace mffdfa {

/// Windows of length `scale` advancing by floor(scale / overlap) samples.
/// The partial window left at the tail is discarded.
struct SegmentLayout {
    std::size_t scale = 0;
    std::size_t overlap = 1;
    std::size_t stride = 0;
    std::vector<std::size_t> starts;

    std::size_t count() const noexcept { return starts.size(); }
};

SegmentLayout layout(std::size_t length, std::size_t scale, std::size_t overlap);

struct ScaleGrid {
    std::vector<std::size_t> scales;

    std::size_t size() const noexcept { return scales.size(); }
};

inline constexpr std::size_t kMinScale = 4;
inline constexpr std::size_t kMinScaleCount = 4;
inline constexpr std::size_t kDefaultMinScale = 30;
inline constexpr std::size_t kDefaultScaleCount = 30;
inline constexpr std::size_t kDefaultOverlap = 2;

/// floor(N / 10); the conventional upper scale.
std::size_t default_max_scale(std::size_t length) noexcept;

/// `n_scales` integer scales log-uniform in [s_min, s_max], rounded,
/// deduplicated and sorted. Throws if fewer than four distinct scales remain.
ScaleGrid default_scale_grid(std::size_t length, std::size_t s_min, std::size_t s_max,
                             std::size_t n_scales = kDefaultScaleCount);

/// Validates and sorts an explicit list of scales.
ScaleGrid make_scale_grid(std::vector<std::size_t> scales, std::size_t length);

} // namespace mffdfa

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mffdfa/fluctuation.hpp"

namespace mffdfa {

struct GeneralizedHurst {
    std::vector<double> q;
    std::vector<double> h;
    std::vector<double> fit_r2;
    std::vector<double> intercepts;
};

/// Inclusive [lo, hi] restriction on the scales used in the log-log fit.
struct ScalingRange {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LineFit ordinary_least_squares(std::span<const double> x, std::span<const double> y);

/// h(q): OLS slope of ln F_q(s) against ln s over the usable scales.
GeneralizedHurst fit_hurst(const FluctuationSurface& surface,
                           std::optional<ScalingRange> range = std::nullopt);

struct SingularitySpectrum {
    std::vector<double> q;
    std::vector<double> alpha;
    std::vector<double> f_alpha;
    double delta_alpha = 0.0;
    std::optional<double> alpha_at_q0;
};

/// alpha = h + q h', f = q (alpha - h) + 1, with h' from central
/// differences (one-sided at the grid ends).
SingularitySpectrum legendre_transform(const GeneralizedHurst& hurst);

double spectrum_width(const SingularitySpectrum& spectrum);

} // namespace mffdfa

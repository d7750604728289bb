#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mffdfa/fluctuation.hpp"
#include "mffdfa/spectrum.hpp"

namespace mffdfa {

enum class Method {
    mfdfa,          // fixed polynomial, non-overlapping windows
    mfdfa_overlap,  // fixed polynomial, windows advancing by floor(s/k)
    mffdfa,         // flexible basis set, overlapping windows
};

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view name);

struct AnalysisOptions {
    Method method = Method::mffdfa;
    int order = 2;
    std::size_t overlap = kDefaultOverlap;
    double q_min = -10.0;
    double q_max = 10.0;
    double q_step = 0.2;
    std::size_t s_min = kDefaultMinScale;
    std::size_t s_max = 0;  // 0: floor(N / 10)
    std::size_t n_scales = kDefaultScaleCount;
    Abscissa abscissa = Abscissa::normalized;
    std::optional<ScalingRange> fit_range;
    unsigned threads = 1;

    /// Overlap actually used: 1 for mfdfa, `overlap` otherwise.
    std::size_t effective_overlap() const noexcept;
};

struct AnalysisResult {
    FluctuationSurface surface;
    GeneralizedHurst hurst;
    SingularitySpectrum spectrum;
    std::vector<double> selection_fractions;  // empty for fixed-polynomial runs
};

/// Profile, windows, detrending, fluctuation function, scaling fit and
/// Legendre transform in one call.
AnalysisResult analyze(const TimeSeries& series, const AnalysisOptions& options);

} // namespace mffdfa

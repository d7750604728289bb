#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mffdfa/detrend.hpp"
#include "mffdfa/segmentation.hpp"
#include "mffdfa/signal.hpp"

namespace mffdfa {

/// Moments q, sorted ascending and distinct. q = 0 takes the logarithmic branch.
struct QGrid {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
};

/// q_min, q_min + step, ..., q_max. Values within 1e-9 step of zero are
/// snapped to exactly 0.
QGrid make_q_grid(double q_min, double q_max, double step);
QGrid make_q_grid(std::vector<double> values);

/// (1/s) * sum (Y_k - f_k)^2
double segment_variance(std::span<const double> profile_segment, std::span<const double> trend);

/// Detrended variances F^2(nu, s) of every window in `windows`, in ascending
/// start order, plus the chosen basis of each window.
struct ScaleVariances {
    std::vector<double> variances;
    std::vector<std::size_t> chosen;
    std::size_t rank_deficient_fits = 0;
};

ScaleVariances segment_variances(const Profile& profile, const SegmentLayout& windows,
                                 const DetrendPolicy& policy, Abscissa abscissa = Abscissa::raw);

/// q-th order average of segment variances. Zero variances contribute 0 for
/// q > 0 and are dropped (with the count reduced) for q <= 0. Returns 0 when
/// nothing usable remains. The sum runs in the log domain so q = -10 on
/// tiny variances does not overflow.
double aggregate_fluctuation(std::span<const double> variances, double q);

struct FluctuationOptions {
    std::size_t overlap = kDefaultOverlap;
    Abscissa abscissa = Abscissa::raw;
    unsigned threads = 1;
};

struct FluctuationSurface {
    QGrid q;
    ScaleGrid scales;
    std::vector<double> values;  // q-major, q.size() x scales.size(); 0 where unusable
    std::vector<std::size_t> segment_counts;
    std::vector<std::size_t> zero_variance_counts;
    std::vector<std::size_t> rank_deficient_fits;
    std::vector<std::string> basis_names;
    std::vector<std::vector<std::size_t>> selection_counts;  // [scale][basis]

    double at(std::size_t iq, std::size_t is) const noexcept { return values[iq * scales.size() + is]; }
    bool usable(std::size_t iq, std::size_t is) const noexcept { return at(iq, is) > 0.0; }
    std::size_t usable_scale_count(std::size_t iq) const noexcept;

    /// Share of windows won by each basis, pooled over all scales.
    std::vector<double> selection_fractions() const;
};

/// F_q(s) over the (q, s) grid. Throws NumericalError when some q has fewer
/// than four usable scales. Scales are processed independently and reduced in
/// a fixed order, so the result does not depend on `threads`.
FluctuationSurface fluctuation_function(const Profile& profile, const ScaleGrid& scales,
                                        const DetrendPolicy& policy, const QGrid& q,
                                        const FluctuationOptions& options = {});

} // namespace mffdfa

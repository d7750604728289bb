#include "mffdfa/analysis.hpp"

#include <algorithm>
#include <string>

#include "mffdfa/error.hpp"

namespace mffdfa {

std::string_view to_string(Method method) noexcept
{
    switch (method) {
    case Method::mfdfa:
        return "mfdfa";
    case Method::mfdfa_overlap:
        return "mfdfa_overlap";
    case Method::mffdfa:
        return "mffdfa";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    for (Method m : {Method::mfdfa, Method::mfdfa_overlap, Method::mffdfa}) {
        if (to_string(m) == name)
            return m;
    }
    throw InputError("unknown method '" + std::string(name) + "' (expected mfdfa, mfdfa_overlap or mffdfa)");
}

std::size_t AnalysisOptions::effective_overlap() const noexcept
{
    return method == Method::mfdfa ? 1 : overlap;
}

AnalysisResult analyze(const TimeSeries& series, const AnalysisOptions& options)
{
    const auto x = series.values();
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); }))
        throw NumericalError("degenerate series: zero variance");

    const std::size_t s_max = options.s_max == 0 ? default_max_scale(series.size()) : options.s_max;
    const ScaleGrid scales = default_scale_grid(series.size(), options.s_min, s_max, options.n_scales);
    const QGrid q = make_q_grid(options.q_min, options.q_max, options.q_step);
    const DetrendPolicy policy = options.method == Method::mffdfa
                                     ? DetrendPolicy::flexible()
                                     : DetrendPolicy::fixed_polynomial(options.order);

    FluctuationOptions fo;
    fo.overlap = options.effective_overlap();
    fo.abscissa = options.abscissa;
    fo.threads = options.threads;

    AnalysisResult result;
    result.surface = fluctuation_function(build_profile(series), scales, policy, q, fo);
    result.hurst = fit_hurst(result.surface, options.fit_range);
    result.spectrum = legendre_transform(result.hurst);
    if (policy.is_flexible())
        result.selection_fractions = result.surface.selection_fractions();
    return result;
}

} // namespace mffdfa

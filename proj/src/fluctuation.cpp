#include "mffdfa/fluctuation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "mffdfa/error.hpp"

namespace mffdfa {

QGrid make_q_grid(double q_min, double q_max, double step)
{
    if (!std::isfinite(q_min) || !std::isfinite(q_max) || !std::isfinite(step) || step <= 0.0)
        throw InputError("q grid needs finite bounds and a positive step");
    if (q_max < q_min)
        throw InputError("q grid: q_max is below q_min");

    const auto intervals = static_cast<long long>(std::llround((q_max - q_min) / step));
    QGrid grid;
    grid.values.reserve(static_cast<std::size_t>(intervals) + 1);
    for (long long i = 0; i <= intervals; ++i) {
        double q = q_min + static_cast<double>(i) * step;
        if (std::abs(q) < 1e-9 * step)
            q = 0.0;
        grid.values.push_back(q);
    }
    return grid;
}

QGrid make_q_grid(std::vector<double> values)
{
    if (values.empty())
        throw InputError("q grid is empty");
    for (double q : values) {
        if (!std::isfinite(q))
            throw InputError("q grid contains a non-finite value");
    }
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(values.begin(), values.end()) != values.end())
        throw InputError("q grid contains duplicate values");
    return QGrid{std::move(values)};
}

double segment_variance(std::span<const double> profile_segment, std::span<const double> trend)
{
    if (profile_segment.size() != trend.size())
        throw InputError("segment and trend lengths differ");
    if (profile_segment.empty())
        return 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < profile_segment.size(); ++k) {
        const double d = profile_segment[k] - trend[k];
        sum += d * d;
    }
    return sum / static_cast<double>(profile_segment.size());
}

namespace {

// Variances at or below (kRoundoff * max|Y|)^2 are rounding residue of an
// exact fit and are treated as zero.
constexpr double kRoundoff = 1e-13;

double zero_variance_floor(const Profile& profile)
{
    double peak = 0.0;
    for (double y : profile.values)
        peak = std::max(peak, std::abs(y));
    const double floor = kRoundoff * peak;
    return floor * floor;
}

ScaleVariances compute_variances(const Profile& profile, const SegmentLayout& windows,
                                 const DetrendPolicy& policy, Abscissa abscissa, double zero_floor)
{
    const std::size_t s = windows.scale;
    const auto& bases = policy.bases();

    std::vector<SegmentFitter> fitters;
    fitters.reserve(bases.size());
    for (const auto& basis : bases)
        fitters.emplace_back(basis, s, abscissa);

    ScaleVariances out;
    out.variances.reserve(windows.count());
    out.chosen.reserve(windows.count());
    for (const auto& f : fitters) {
        if (f.rank_deficient())
            out.rank_deficient_fits += windows.count();
    }

    std::vector<std::vector<double>> trend(fitters.size(), std::vector<double>(s));
    std::vector<double> ss_res(fitters.size());
    std::vector<double> scores(fitters.size());

    for (std::size_t start : windows.starts) {
        const std::span<const double> segment(profile.values.data() + start, s);
        for (std::size_t j = 0; j < fitters.size(); ++j) {
            fitters[j].fit_values(segment, trend[j]);
            double ss = 0.0;
            for (std::size_t i = 0; i < s; ++i) {
                const double r = segment[i] - trend[j][i];
                ss += r * r;
            }
            ss_res[j] = ss;
        }

        std::size_t best = 0;
        if (fitters.size() > 1) {
            FitResult probe;
            for (std::size_t j = 0; j < fitters.size(); ++j) {
                probe.ss_res = ss_res[j];
                scores[j] = coefficient_of_determination(segment, probe);
            }
            best = select_best(scores);
        }

        double variance = segment_variance(segment, trend[best]);
        if (variance <= zero_floor)
            variance = 0.0;
        out.variances.push_back(variance);
        out.chosen.push_back(best);
    }
    return out;
}

} // namespace

ScaleVariances segment_variances(const Profile& profile, const SegmentLayout& windows,
                                 const DetrendPolicy& policy, Abscissa abscissa)
{
    if (windows.count() == 0 || windows.starts.back() + windows.scale > profile.size())
        throw InputError("segment layout does not fit the profile");
    return compute_variances(profile, windows, policy, abscissa, zero_variance_floor(profile));
}

double aggregate_fluctuation(std::span<const double> variances, double q)
{
    std::size_t total = variances.size();
    std::vector<double> logs;
    logs.reserve(variances.size());
    for (double v : variances) {
        if (v > 0.0)
            logs.push_back(std::log(v));
    }
    if (logs.empty())
        return 0.0;

    if (q == 0.0) {
        double sum = 0.0;
        for (double l : logs)
            sum += l;
        return std::exp(sum / (2.0 * static_cast<double>(logs.size())));
    }

    if (q < 0.0)
        total = logs.size();

    const double half_q = 0.5 * q;
    double peak = -std::numeric_limits<double>::infinity();
    for (double l : logs)
        peak = std::max(peak, half_q * l);
    double sum = 0.0;
    for (double l : logs)
        sum += std::exp(half_q * l - peak);
    const double log_mean = peak + std::log(sum) - std::log(static_cast<double>(total));
    return std::exp(log_mean / q);
}

std::size_t FluctuationSurface::usable_scale_count(std::size_t iq) const noexcept
{
    std::size_t n = 0;
    for (std::size_t is = 0; is < scales.size(); ++is)
        n += usable(iq, is) ? 1 : 0;
    return n;
}

std::vector<double> FluctuationSurface::selection_fractions() const
{
    std::vector<double> fractions(basis_names.size(), 0.0);
    double total = 0.0;
    for (const auto& per_scale : selection_counts) {
        for (std::size_t j = 0; j < per_scale.size(); ++j) {
            fractions[j] += static_cast<double>(per_scale[j]);
            total += static_cast<double>(per_scale[j]);
        }
    }
    if (total > 0.0) {
        for (double& f : fractions)
            f /= total;
    }
    return fractions;
}

FluctuationSurface fluctuation_function(const Profile& profile, const ScaleGrid& scales,
                                        const DetrendPolicy& policy, const QGrid& q,
                                        const FluctuationOptions& options)
{
    if (q.size() == 0)
        throw InputError("q grid is empty");
    if (scales.size() == 0)
        throw InputError("scale grid is empty");

    const std::size_t n_scales = scales.size();
    std::vector<SegmentLayout> windows;
    windows.reserve(n_scales);
    for (std::size_t s : scales.scales) {
        if (s < policy.max_parameter_count())
            throw InputError("scale " + std::to_string(s) + " is shorter than the detrending model");
        windows.push_back(layout(profile.size(), s, options.overlap));
    }

    FluctuationSurface surface;
    surface.q = q;
    surface.scales = scales;
    surface.values.assign(q.size() * n_scales, 0.0);
    surface.segment_counts.resize(n_scales);
    surface.zero_variance_counts.resize(n_scales);
    surface.rank_deficient_fits.resize(n_scales);
    surface.selection_counts.assign(n_scales, std::vector<std::size_t>(policy.bases().size(), 0));
    for (const auto& b : policy.bases())
        surface.basis_names.push_back(b.name);

    const double zero_floor = zero_variance_floor(profile);
    std::vector<std::exception_ptr> failures(n_scales);

    // Each scale writes only its own column of the surface.
    auto process = [&](std::size_t is) {
        try {
            const ScaleVariances sv =
                compute_variances(profile, windows[is], policy, options.abscissa, zero_floor);
            surface.segment_counts[is] = sv.variances.size();
            surface.zero_variance_counts[is] = static_cast<std::size_t>(
                std::count(sv.variances.begin(), sv.variances.end(), 0.0));
            surface.rank_deficient_fits[is] = sv.rank_deficient_fits;
            for (std::size_t c : sv.chosen)
                ++surface.selection_counts[is][c];
            for (std::size_t iq = 0; iq < q.size(); ++iq)
                surface.values[iq * n_scales + is] = aggregate_fluctuation(sv.variances, q.values[iq]);
        } catch (...) {
            failures[is] = std::current_exception();
        }
    };

    const unsigned workers = std::clamp<unsigned>(options.threads, 1u, static_cast<unsigned>(n_scales));
    if (workers == 1) {
        for (std::size_t is = 0; is < n_scales; ++is)
            process(is);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t is = next++; is < n_scales; is = next++)
                    process(is);
            });
        }
        for (auto& t : pool)
            t.join();
    }
    for (const auto& f : failures) {
        if (f)
            std::rethrow_exception(f);
    }

    for (std::size_t iq = 0; iq < q.size(); ++iq) {
        const std::size_t usable = surface.usable_scale_count(iq);
        if (usable < kMinScaleCount) {
            std::ostringstream msg;
            msg << "insufficient scales: q=" << q.values[iq] << " has " << usable
                << " usable scales, need " << kMinScaleCount;
            throw NumericalError(msg.str());
        }
    }
    return surface;
}

} // namespace mffdfa

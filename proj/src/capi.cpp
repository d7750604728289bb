#include "mffdfa/mffdfa.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "mffdfa/analysis.hpp"
#include "mffdfa/error.hpp"
#include "mffdfa/generators.hpp"

struct mffdfa_series {
    mffdfa::TimeSeries series;
};

struct mffdfa_result {
    mffdfa::AnalysisResult result;
};

namespace {

thread_local std::string last_error;

mffdfa_status fail(mffdfa_status status, const char* message)
{
    last_error = message;
    return status;
}

template <typename Fn>
mffdfa_status guarded(Fn&& fn) noexcept
{
    try {
        fn();
        return MFFDFA_OK;
    } catch (const mffdfa::InputError& e) {
        return fail(MFFDFA_ERR_INPUT, e.what());
    } catch (const mffdfa::NumericalError& e) {
        return fail(MFFDFA_ERR_NUMERICAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MFFDFA_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(MFFDFA_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(MFFDFA_ERR_INTERNAL, "unknown error");
    }
}

mffdfa::AnalysisOptions to_options(const mffdfa_config& c)
{
    mffdfa::AnalysisOptions o;
    switch (c.method) {
    case MFFDFA_METHOD_MFDFA:
        o.method = mffdfa::Method::mfdfa;
        break;
    case MFFDFA_METHOD_MFDFA_OVERLAP:
        o.method = mffdfa::Method::mfdfa_overlap;
        break;
    case MFFDFA_METHOD_MFFDFA:
        o.method = mffdfa::Method::mffdfa;
        break;
    default:
        throw mffdfa::InputError("unknown method code " + std::to_string(c.method));
    }
    if (c.abscissa != MFFDFA_ABSCISSA_RAW && c.abscissa != MFFDFA_ABSCISSA_NORMALIZED)
        throw mffdfa::InputError("unknown abscissa code " + std::to_string(c.abscissa));
    o.order = c.order;
    o.overlap = c.overlap;
    o.q_min = c.q_min;
    o.q_max = c.q_max;
    o.q_step = c.q_step;
    o.s_min = c.s_min;
    o.s_max = c.s_max;
    o.n_scales = c.n_scales;
    o.abscissa = c.abscissa == MFFDFA_ABSCISSA_RAW ? mffdfa::Abscissa::raw : mffdfa::Abscissa::normalized;
    if (c.fit_s_lo != 0 || c.fit_s_hi != 0) {
        if (c.fit_s_hi < c.fit_s_lo)
            throw mffdfa::InputError("scaling-fit range has fit_s_hi below fit_s_lo");
        o.fit_range = mffdfa::ScalingRange{c.fit_s_lo, c.fit_s_hi};
    }
    o.threads = c.threads == 0 ? 1 : c.threads;
    return o;
}

template <typename T>
std::size_t copy_out(const std::vector<T>& src, double* out, std::size_t capacity)
{
    const std::size_t n = std::min(src.size(), capacity);
    for (std::size_t i = 0; out && i < n; ++i)
        out[i] = static_cast<double>(src[i]);
    return src.size();
}

} // namespace

extern "C" {

const char* mffdfa_version(void)
{
    return "0.1.0";
}

const char* mffdfa_last_error(void)
{
    return last_error.c_str();
}

void mffdfa_config_default(mffdfa_config* config)
{
    if (!config)
        return;
    const mffdfa::AnalysisOptions o;
    config->method = MFFDFA_METHOD_MFFDFA;
    config->order = o.order;
    config->overlap = o.overlap;
    config->q_min = o.q_min;
    config->q_max = o.q_max;
    config->q_step = o.q_step;
    config->s_min = o.s_min;
    config->s_max = o.s_max;
    config->n_scales = o.n_scales;
    config->abscissa = o.abscissa == mffdfa::Abscissa::raw ? MFFDFA_ABSCISSA_RAW : MFFDFA_ABSCISSA_NORMALIZED;
    config->fit_s_lo = 0;
    config->fit_s_hi = 0;
    config->threads = 1;
}

const char* mffdfa_method_name(int method)
{
    switch (method) {
    case MFFDFA_METHOD_MFDFA:
        return "mfdfa";
    case MFFDFA_METHOD_MFDFA_OVERLAP:
        return "mfdfa_overlap";
    case MFFDFA_METHOD_MFFDFA:
        return "mffdfa";
    default:
        return nullptr;
    }
}

mffdfa_status mffdfa_method_parse(const char* name, int* method)
{
    if (!name || !method)
        return fail(MFFDFA_ERR_INPUT, "null argument");
    return guarded([&] {
        switch (mffdfa::parse_method(name)) {
        case mffdfa::Method::mfdfa:
            *method = MFFDFA_METHOD_MFDFA;
            break;
        case mffdfa::Method::mfdfa_overlap:
            *method = MFFDFA_METHOD_MFDFA_OVERLAP;
            break;
        case mffdfa::Method::mffdfa:
            *method = MFFDFA_METHOD_MFFDFA;
            break;
        }
    });
}

mffdfa_status mffdfa_q_grid(double q_min, double q_max, double q_step, double* out, size_t capacity,
                            size_t* count)
{
    if (!count)
        return fail(MFFDFA_ERR_INPUT, "null argument");
    return guarded([&] {
        const auto grid = mffdfa::make_q_grid(q_min, q_max, q_step);
        *count = copy_out(grid.values, out, capacity);
    });
}

mffdfa_status mffdfa_series_create(const double* values, size_t length, mffdfa_series** out)
{
    if (!out || (!values && length > 0))
        return fail(MFFDFA_ERR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new mffdfa_series{mffdfa::TimeSeries(std::vector<double>(values, values + length))};
    });
}

void mffdfa_series_destroy(mffdfa_series* series)
{
    delete series;
}

size_t mffdfa_series_length(const mffdfa_series* series)
{
    return series ? series->series.size() : 0;
}

size_t mffdfa_series_values(const mffdfa_series* series, double* out, size_t capacity)
{
    if (!series)
        return 0;
    const auto v = series->series.values();
    for (std::size_t i = 0; out && i < std::min(v.size(), capacity); ++i)
        out[i] = v[i];
    return v.size();
}

mffdfa_status mffdfa_series_profile(const mffdfa_series* series, double* out)
{
    if (!series || !out)
        return fail(MFFDFA_ERR_INPUT, "null argument");
    return guarded([&] {
        const auto profile = mffdfa::build_profile(series->series);
        std::copy(profile.values.begin(), profile.values.end(), out);
    });
}

mffdfa_status mffdfa_series_log_returns(const mffdfa_series* prices, const size_t* session_starts,
                                        size_t n_sessions, mffdfa_series** out)
{
    if (!prices || !out || (!session_starts && n_sessions > 0))
        return fail(MFFDFA_ERR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&] {
        const std::span<const std::size_t> breaks(session_starts, n_sessions);
        *out = new mffdfa_series{mffdfa::log_returns(prices->series, breaks)};
    });
}

mffdfa_status mffdfa_generate_fgn(double hurst, size_t length, uint64_t seed, int path, mffdfa_series** out)
{
    if (!out)
        return fail(MFFDFA_ERR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&] {
        mffdfa::FbmSpec spec;
        spec.hurst = hurst;
        spec.length = length;
        spec.seed = seed;
        spec.output = path ? mffdfa::FbmSpec::Output::path : mffdfa::FbmSpec::Output::increments;
        *out = new mffdfa_series{mffdfa::generate_fgn(spec)};
    });
}

mffdfa_status mffdfa_generate_cascade(double a, unsigned n_max, mffdfa_series** out)
{
    if (!out)
        return fail(MFFDFA_ERR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new mffdfa_series{mffdfa::generate_cascade({a, n_max})}; });
}

mffdfa_status mffdfa_cascade_oracle(double a, const double* q, size_t n, double* tau, double* alpha,
                                    double* f_alpha, double* h)
{
    if (!q && n > 0)
        return fail(MFFDFA_ERR_INPUT, "null argument");
    return guarded([&] {
        const mffdfa::CascadeOracle oracle(a);
        for (std::size_t i = 0; i < n; ++i) {
            if (tau)
                tau[i] = oracle.tau(q[i]);
            if (alpha)
                alpha[i] = oracle.alpha(q[i]);
            if (f_alpha)
                f_alpha[i] = oracle.f_alpha(q[i]);
            if (h)
                h[i] = oracle.h(q[i]);
        }
    });
}

mffdfa_status mffdfa_analyze(const mffdfa_series* series, const mffdfa_config* config, mffdfa_result** out)
{
    if (!series || !config || !out)
        return fail(MFFDFA_ERR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto result = mffdfa::analyze(series->series, to_options(*config));
        *out = new mffdfa_result{std::move(result)};
    });
}

void mffdfa_result_destroy(mffdfa_result* result)
{
    delete result;
}

size_t mffdfa_result_q_count(const mffdfa_result* result)
{
    return result ? result->result.hurst.q.size() : 0;
}

size_t mffdfa_result_scale_count(const mffdfa_result* result)
{
    return result ? result->result.surface.scales.size() : 0;
}

size_t mffdfa_result_basis_count(const mffdfa_result* result)
{
    return result ? result->result.surface.basis_names.size() : 0;
}

const char* mffdfa_result_basis_name(const mffdfa_result* result, size_t index)
{
    if (!result || index >= result->result.surface.basis_names.size())
        return nullptr;
    return result->result.surface.basis_names[index].c_str();
}

double mffdfa_result_delta_alpha(const mffdfa_result* result)
{
    return result ? result->result.spectrum.delta_alpha : 0.0;
}

size_t mffdfa_result_field(const mffdfa_result* result, int field, double* out, size_t capacity)
{
    if (!result) {
        fail(MFFDFA_ERR_INPUT, "null result");
        return 0;
    }
    const auto& r = result->result;
    switch (field) {
    case MFFDFA_FIELD_Q:
        return copy_out(r.hurst.q, out, capacity);
    case MFFDFA_FIELD_H:
        return copy_out(r.hurst.h, out, capacity);
    case MFFDFA_FIELD_FIT_R2:
        return copy_out(r.hurst.fit_r2, out, capacity);
    case MFFDFA_FIELD_INTERCEPT:
        return copy_out(r.hurst.intercepts, out, capacity);
    case MFFDFA_FIELD_ALPHA:
        return copy_out(r.spectrum.alpha, out, capacity);
    case MFFDFA_FIELD_F_ALPHA:
        return copy_out(r.spectrum.f_alpha, out, capacity);
    case MFFDFA_FIELD_SCALES:
        return copy_out(r.surface.scales.scales, out, capacity);
    case MFFDFA_FIELD_SEGMENT_COUNTS:
        return copy_out(r.surface.segment_counts, out, capacity);
    case MFFDFA_FIELD_ZERO_VARIANCE:
        return copy_out(r.surface.zero_variance_counts, out, capacity);
    case MFFDFA_FIELD_RANK_DEFICIENT:
        return copy_out(r.surface.rank_deficient_fits, out, capacity);
    case MFFDFA_FIELD_FLUCTUATION:
        return copy_out(r.surface.values, out, capacity);
    case MFFDFA_FIELD_SELECTION:
        return copy_out(r.selection_fractions, out, capacity);
    case MFFDFA_FIELD_SELECTION_COUNTS: {
        std::vector<std::size_t> flat;
        if (r.surface.basis_names.size() > 1) {
            for (const auto& per_scale : r.surface.selection_counts)
                flat.insert(flat.end(), per_scale.begin(), per_scale.end());
        }
        return copy_out(flat, out, capacity);
    }
    default:
        fail(MFFDFA_ERR_INPUT, "unknown result field");
        return 0;
    }
}

size_t mffdfa_result_field_size(const mffdfa_result* result, int field)
{
    return mffdfa_result_field(result, field, nullptr, 0);
}

} // extern "C"

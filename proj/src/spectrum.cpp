#include "mffdfa/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mffdfa/error.hpp"

namespace mffdfa {

LineFit ordinary_least_squares(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw InputError("line fit needs two equally long samples of at least 2 points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw NumericalError("line fit: abscissa has zero spread");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

GeneralizedHurst fit_hurst(const FluctuationSurface& surface, std::optional<ScalingRange> range)
{
    GeneralizedHurst out;
    out.q = surface.q.values;
    const std::size_t nq = surface.q.size();
    out.h.resize(nq);
    out.fit_r2.resize(nq);
    out.intercepts.resize(nq);

    std::vector<double> log_s, log_f;
    for (std::size_t iq = 0; iq < nq; ++iq) {
        log_s.clear();
        log_f.clear();
        for (std::size_t is = 0; is < surface.scales.size(); ++is) {
            const std::size_t s = surface.scales.scales[is];
            if (range && (s < range->lo || s > range->hi))
                continue;
            if (!surface.usable(iq, is))
                continue;
            log_s.push_back(std::log(static_cast<double>(s)));
            log_f.push_back(std::log(surface.at(iq, is)));
        }
        if (log_s.size() < kMinScaleCount) {
            std::ostringstream msg;
            msg << "insufficient scales for the scaling fit at q=" << out.q[iq] << ": " << log_s.size()
                << " usable, need " << kMinScaleCount;
            throw NumericalError(msg.str());
        }
        const LineFit line = ordinary_least_squares(log_s, log_f);
        out.h[iq] = line.slope;
        out.intercepts[iq] = line.intercept;
        out.fit_r2[iq] = line.r_squared;
    }
    return out;
}

SingularitySpectrum legendre_transform(const GeneralizedHurst& hurst)
{
    const std::size_t n = hurst.q.size();
    if (n < 3 || hurst.h.size() != n)
        throw InputError("Legendre transform needs h(q) on at least 3 q values");

    SingularitySpectrum out;
    out.q = hurst.q;
    out.alpha.resize(n);
    out.f_alpha.resize(n);

    const auto& q = hurst.q;
    const auto& h = hurst.h;
    for (std::size_t i = 0; i < n; ++i) {
        double slope;
        if (i == 0)
            slope = (h[1] - h[0]) / (q[1] - q[0]);
        else if (i == n - 1)
            slope = (h[n - 1] - h[n - 2]) / (q[n - 1] - q[n - 2]);
        else
            slope = (h[i + 1] - h[i - 1]) / (q[i + 1] - q[i - 1]);
        out.alpha[i] = h[i] + q[i] * slope;
        out.f_alpha[i] = q[i] * (out.alpha[i] - h[i]) + 1.0;
        if (q[i] == 0.0)
            out.alpha_at_q0 = out.alpha[i];
    }
    out.delta_alpha = spectrum_width(out);
    return out;
}

double spectrum_width(const SingularitySpectrum& spectrum)
{
    if (spectrum.alpha.empty())
        throw InputError("spectrum is empty");
    const auto [lo, hi] = std::minmax_element(spectrum.alpha.begin(), spectrum.alpha.end());
    return *hi - *lo;
}

} // namespace mffdfa

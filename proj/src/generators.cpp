#include "mffdfa/generators.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mffdfa/error.hpp"

namespace mffdfa {

double fgn_autocovariance(double hurst, std::size_t lag) noexcept
{
    if (lag == 0)
        return 1.0;
    const double k = static_cast<double>(lag);
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + std::pow(k - 1.0, two_h));
}

TimeSeries generate_fgn(const FbmSpec& spec)
{
    if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) {
        std::ostringstream msg;
        msg << "Hurst exponent must lie strictly inside (0, 1), got " << spec.hurst;
        throw InputError(msg.str());
    }
    if (spec.length == 0)
        throw InputError("fGn length must be positive");

    const std::size_t n = spec.length;
    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k)
        gamma[k] = fgn_autocovariance(spec.hurst, k);

    std::mt19937_64 engine(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    // Durbin-Levinson: x_t given x_0..x_{t-1} is Gaussian with mean
    // sum_j phi_{t,j} x_{t-j} and variance v_t.
    std::vector<double> x(n);
    std::vector<double> phi(n, 0.0), previous(n, 0.0);
    double v = gamma[0];
    x[0] = std::sqrt(v) * normal(engine);
    for (std::size_t t = 1; t < n; ++t) {
        double acc = gamma[t];
        for (std::size_t j = 1; j < t; ++j)
            acc -= previous[j] * gamma[t - j];
        const double reflection = acc / v;
        phi[t] = reflection;
        for (std::size_t j = 1; j < t; ++j)
            phi[j] = previous[j] - reflection * previous[t - j];
        v *= 1.0 - reflection * reflection;

        double mean = 0.0;
        for (std::size_t j = 1; j <= t; ++j)
            mean += phi[j] * x[t - j];
        x[t] = mean + std::sqrt(v) * normal(engine);
        std::copy(phi.begin() + 1, phi.begin() + static_cast<std::ptrdiff_t>(t) + 1, previous.begin() + 1);
    }

    if (spec.output == FbmSpec::Output::path) {
        for (std::size_t t = 1; t < n; ++t)
            x[t] += x[t - 1];
    }
    return TimeSeries(std::move(x));
}

TimeSeries generate_cascade(const CascadeSpec& spec)
{
    if (!(spec.a > 0.5 && spec.a < 1.0)) {
        std::ostringstream msg;
        msg << "cascade parameter a must lie strictly inside (0.5, 1), got " << spec.a;
        throw InputError(msg.str());
    }
    if (spec.n_max == 0 || spec.n_max > kMaxCascadeDepth)
        throw InputError("cascade depth n_max must lie in [1, " + std::to_string(kMaxCascadeDepth) + "], got " +
                         std::to_string(spec.n_max));

    const unsigned depth = spec.n_max;
    std::vector<double> power_a(depth + 1), power_b(depth + 1);
    for (unsigned j = 0; j <= depth; ++j) {
        power_a[j] = std::pow(spec.a, static_cast<double>(j));
        power_b[j] = std::pow(1.0 - spec.a, static_cast<double>(j));
    }

    const std::size_t length = std::size_t{1} << depth;
    std::vector<double> x(length);
    for (std::size_t k = 0; k < length; ++k) {
        const auto ones = static_cast<unsigned>(std::popcount(k));
        x[k] = power_a[ones] * power_b[depth - ones];
    }
    return TimeSeries(std::move(x));
}

CascadeOracle::CascadeOracle(double a) : a_(a)
{
    if (!(a > 0.5 && a < 1.0)) {
        std::ostringstream msg;
        msg << "cascade parameter a must lie strictly inside (0.5, 1), got " << a;
        throw InputError(msg.str());
    }
}

double CascadeOracle::tau(double q) const noexcept
{
    return 0.0 - std::log(std::pow(a_, q) + std::pow(1.0 - a_, q)) / std::numbers::ln2;
}

double CascadeOracle::alpha(double q) const noexcept
{
    const double wa = std::pow(a_, q);
    const double wb = std::pow(1.0 - a_, q);
    return -(1.0 / std::numbers::ln2) * (wa * std::log(a_) + wb * std::log(1.0 - a_)) / (wa + wb);
}

double CascadeOracle::f_alpha(double q) const noexcept
{
    const double wa = std::pow(a_, q);
    const double wb = std::pow(1.0 - a_, q);
    return -(q / std::numbers::ln2) * (wa * std::log(a_) + wb * std::log(1.0 - a_)) / (wa + wb) -
           (-std::log(wa + wb) / std::numbers::ln2);
}

double CascadeOracle::h(double q) const noexcept
{
    if (q == 0.0)
        return alpha(0.0);
    return (tau(q) + 1.0) / q;
}

double CascadeOracle::alpha_min_limit() const noexcept
{
    return -std::log(a_) / std::numbers::ln2;
}

double CascadeOracle::alpha_max_limit() const noexcept
{
    return -std::log(1.0 - a_) / std::numbers::ln2;
}

} // namespace mffdfa

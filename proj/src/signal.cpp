#include "mffdfa/signal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mffdfa/error.hpp"

namespace mffdfa {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values))
{
    if (values_.empty())
        throw InputError("time series is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            std::ostringstream msg;
            msg << "non-finite sample at index " << i << " (" << values_[i] << ")";
            throw InputError(msg.str());
        }
    }
}

Profile build_profile(const TimeSeries& series)
{
    const auto x = series.values();

    long double total = 0.0L;
    for (double v : x)
        total += v;
    const long double mean = total / static_cast<long double>(x.size());

    Profile profile;
    profile.source_mean = static_cast<double>(mean);
    profile.values.resize(x.size());
    long double running = 0.0L;
    for (std::size_t j = 0; j < x.size(); ++j) {
        running += static_cast<long double>(x[j]) - mean;
        profile.values[j] = static_cast<double>(running);
    }
    return profile;
}

namespace {

void check_prices(std::span<const double> p)
{
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0)) {
            std::ostringstream msg;
            msg << "price at index " << i << " is not strictly positive (" << p[i] << ")";
            throw InputError(msg.str());
        }
    }
}

} // namespace

TimeSeries log_returns(const TimeSeries& prices)
{
    return log_returns(prices, {});
}

TimeSeries log_returns(const TimeSeries& prices, std::span<const std::size_t> session_starts)
{
    const auto p = prices.values();
    if (p.size() < 2)
        throw InputError("log returns need at least 2 prices, got " + std::to_string(p.size()));
    check_prices(p);

    std::vector<std::size_t> breaks(session_starts.begin(), session_starts.end());
    std::sort(breaks.begin(), breaks.end());
    auto next_break = breaks.begin();

    std::vector<double> r;
    r.reserve(p.size() - 1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        while (next_break != breaks.end() && *next_break <= i)
            ++next_break;
        // return i spans prices i and i+1; a session starting at i+1 cuts it
        if (next_break != breaks.end() && *next_break == i + 1)
            continue;
        r.push_back(std::log(p[i + 1]) - std::log(p[i]));
    }
    if (r.empty())
        throw InputError("no log returns remain after session splitting");
    return TimeSeries(std::move(r));
}

} // namespace mffdfa

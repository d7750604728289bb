#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mffdfa {

/// Ordered real samples. Construction rejects empty input and NaN/Inf (the
/// diagnostic names the first bad index). Analyses impose their own, much
/// larger, minimum lengths.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

private:
    std::vector<double> values_;
};

/// Cumulative sum of mean-subtracted samples, Y(j) = sum_{i<=j} (x_i - <x>).
struct Profile {
    std::vector<double> values;
    double source_mean = 0.0;

    std::size_t size() const noexcept { return values.size(); }
};

Profile build_profile(const TimeSeries& series);

/// r(i) = ln p(i+1) - ln p(i). Prices must be strictly positive.
TimeSeries log_returns(const TimeSeries& prices);

/// Log returns computed within sessions only. `session_starts` holds the
/// 0-based price indices where a new session begins; the return spanning
/// each boundary (e.g. an overnight gap) is dropped.
TimeSeries log_returns(const TimeSeries& prices, std::span<const std::size_t> session_starts);

} // namespace mffdfa

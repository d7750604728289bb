#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mffdfa/signal.hpp"

namespace mffdfa {

struct FbmSpec {
    enum class Output { increments, path };

    double hurst = 0.5;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    Output output = Output::increments;
};

/// fGn autocovariance at lag k for unit-variance increments.
double fgn_autocovariance(double hurst, std::size_t lag) noexcept;

/// Exact-covariance fractional Gaussian noise (Durbin-Levinson recursion on
/// the fGn autocovariance; O(N^2)). Unit variance. With Output::path the
/// cumulative sum is returned instead.
TimeSeries generate_fgn(const FbmSpec& spec);

struct CascadeSpec {
    double a = 0.65;
    unsigned n_max = 0;
};

inline constexpr unsigned kMaxCascadeDepth = 26;

/// x_k = a^{n(k-1)} (1-a)^{n_max - n(k-1)}, k = 1..2^n_max, where n(j) is the
/// number of set bits of j.
TimeSeries generate_cascade(const CascadeSpec& spec);

/// Closed-form multifractal description of the binomial cascade, with
/// tau(q) = -ln[a^q + (1-a)^q] / ln 2 (so tau(0) = -1, tau(1) = 0).
class CascadeOracle {
public:
    explicit CascadeOracle(double a);

    double a() const noexcept { return a_; }
    double tau(double q) const noexcept;
    double alpha(double q) const noexcept;
    double f_alpha(double q) const noexcept;
    /// (tau(q) + 1) / q, continued by alpha(0) at q = 0.
    double h(double q) const noexcept;

    double alpha_min_limit() const noexcept;  // q -> +inf
    double alpha_max_limit() const noexcept;  // q -> -inf

private:
    double a_;
};

} // namespace mffdfa
